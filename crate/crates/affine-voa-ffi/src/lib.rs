//! C interface over the exact affine vertex-algebra computations.
//!
//! The surface is a JSON request/response pair around
//! [`affine_voa::driver::run_request`]: the caller allocates a runner,
//! submits requests like `{"command": "slice", "nilpotent": "minimal",
//! "seed": 7}`, and receives the same digest-carrying report envelope the
//! command-line tool prints.  Strings returned through the out-pointer are
//! owned by the caller and must be released with
//! [`affine_voa_string_free`]; the last-error string is owned by the runner
//! and lives until the next call on that runner.
//!
//! Return codes mirror the command-line exit codes, with two extra cases
//! that can only arise across a C boundary:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | run complete, certification checks passed           |
//! | 1    | run complete, at least one certification check failed |
//! | 2    | bad request (unknown command, invalid parameters)   |
//! | 3    | invalid argument (null pointer, non-UTF-8, bad JSON) |
//! | 4    | internal error (a library invariant was violated)   |
//!
//! On codes 0 and 1 the out-pointer receives the report; on 2–4 it is set to
//! null and the runner's last-error string describes the problem.  All
//! computation is exact and seeded, so identical requests produce
//! byte-identical report payloads.

use affine_voa::{driver, report};
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

pub const AFFINE_VOA_OK: c_int = 0;
pub const AFFINE_VOA_CHECK_FAILED: c_int = 1;
pub const AFFINE_VOA_BAD_REQUEST: c_int = 2;
pub const AFFINE_VOA_INVALID_ARGUMENT: c_int = 3;
pub const AFFINE_VOA_INTERNAL_ERROR: c_int = 4;

/// Opaque handle holding the last error message of a sequence of runs.
pub struct AffineVoaRunner {
    last_error: Option<CString>,
}

impl AffineVoaRunner {
    fn set_error(&mut self, msg: &str) {
        // a NUL inside the message would truncate; replace to stay lossless
        let clean = msg.replace('\0', "\u{fffd}");
        self.last_error = Some(CString::new(clean).expect("no interior NUL"));
    }
}

/// Allocates a runner.  Release with [`affine_voa_runner_free`].
#[no_mangle]
pub extern "C" fn affine_voa_runner_new() -> *mut AffineVoaRunner {
    Box::into_raw(Box::new(AffineVoaRunner { last_error: None }))
}

/// Releases a runner allocated by [`affine_voa_runner_new`].  A null pointer
/// is a no-op.
///
/// # Safety
/// `runner` must be null or a pointer obtained from
/// [`affine_voa_runner_new`] that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn affine_voa_runner_free(runner: *mut AffineVoaRunner) {
    if !runner.is_null() {
        drop(Box::from_raw(runner));
    }
}

/// The runner's last error message, or null when the previous call
/// succeeded.  The pointer stays valid until the next call on this runner.
///
/// # Safety
/// `runner` must be a valid runner pointer.
#[no_mangle]
pub unsafe extern "C" fn affine_voa_last_error(runner: *const AffineVoaRunner) -> *const c_char {
    if runner.is_null() {
        return std::ptr::null();
    }
    match &(*runner).last_error {
        Some(s) => s.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Runs one JSON request and writes the report envelope to `*report_out` as
/// a NUL-terminated string owned by the caller.  See the module docs for
/// the request shape and return codes.
///
/// # Safety
/// `runner` must be a valid runner pointer, `request` a NUL-terminated
/// string, and `report_out` a valid pointer to a `char *`.
#[no_mangle]
pub unsafe extern "C" fn affine_voa_run_json(
    runner: *mut AffineVoaRunner,
    request: *const c_char,
    report_out: *mut *mut c_char,
) -> c_int {
    if runner.is_null() || report_out.is_null() {
        return AFFINE_VOA_INVALID_ARGUMENT;
    }
    *report_out = std::ptr::null_mut();
    let runner = &mut *runner;
    runner.last_error = None;
    if request.is_null() {
        runner.set_error("request pointer is null");
        return AFFINE_VOA_INVALID_ARGUMENT;
    }
    let text = match CStr::from_ptr(request).to_str() {
        Ok(t) => t,
        Err(_) => {
            runner.set_error("request is not valid UTF-8");
            return AFFINE_VOA_INVALID_ARGUMENT;
        }
    };
    let parsed: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            runner.set_error(&format!("request is not valid JSON: {e}"));
            return AFFINE_VOA_INVALID_ARGUMENT;
        }
    };

    let t0 = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| driver::run_request(&parsed)));
    match outcome {
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            runner.set_error(&format!("internal error: {msg}"));
            AFFINE_VOA_INTERNAL_ERROR
        }
        Ok(Err(usage)) => {
            runner.set_error(&usage);
            AFFINE_VOA_BAD_REQUEST
        }
        Ok(Ok((payload, certified))) => {
            let envelope = report::envelope(payload, t0.elapsed().as_millis());
            let text = serde_json::to_string(&envelope).expect("serializable report");
            let cstring = CString::new(text).expect("JSON has no interior NUL");
            *report_out = cstring.into_raw();
            if certified {
                AFFINE_VOA_OK
            } else {
                AFFINE_VOA_CHECK_FAILED
            }
        }
    }
}

/// Releases a string returned through `report_out`.  A null pointer is a
/// no-op.
///
/// # Safety
/// `s` must be null or a pointer received from this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn affine_voa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn affine_voa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(runner: *mut AffineVoaRunner, request: &str) -> (c_int, Option<String>) {
        let req = CString::new(request).unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        let code = unsafe { affine_voa_run_json(runner, req.as_ptr(), &mut out) };
        let text = if out.is_null() {
            None
        } else {
            let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
            unsafe { affine_voa_string_free(out) };
            Some(s)
        };
        (code, text)
    }

    fn last_error(runner: *const AffineVoaRunner) -> Option<String> {
        let p = unsafe { affine_voa_last_error(runner) };
        if p.is_null() {
            None
        } else {
            Some(unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
        }
    }

    #[test]
    fn certified_run_round_trips() {
        let runner = affine_voa_runner_new();
        let (code, text) =
            run(runner, r#"{"command": "slice", "nilpotent": "regular", "seed": 11}"#);
        assert_eq!(code, AFFINE_VOA_OK);
        assert!(last_error(runner).is_none());
        let envelope: serde_json::Value = serde_json::from_str(&text.unwrap()).unwrap();
        assert_eq!(envelope["payload"]["command"], "slice");
        assert_eq!(envelope["payload"]["certified"], true);
        assert!(envelope["digest"].as_str().unwrap().starts_with("sha256:"));
        unsafe { affine_voa_runner_free(runner) };
    }

    #[test]
    fn identical_requests_yield_identical_payloads() {
        let runner = affine_voa_runner_new();
        let req = r#"{"command": "selftest", "seed": 3}"#;
        let (c1, t1) = run(runner, req);
        let (c2, t2) = run(runner, req);
        assert_eq!((c1, c2), (AFFINE_VOA_OK, AFFINE_VOA_OK));
        let e1: serde_json::Value = serde_json::from_str(&t1.unwrap()).unwrap();
        let e2: serde_json::Value = serde_json::from_str(&t2.unwrap()).unwrap();
        assert_eq!(e1["payload"], e2["payload"]);
        assert_eq!(e1["digest"], e2["digest"]);
        unsafe { affine_voa_runner_free(runner) };
    }

    #[test]
    fn bad_requests_report_through_last_error() {
        let runner = affine_voa_runner_new();

        let (code, text) = run(runner, r#"{"command": "orbit"}"#);
        assert_eq!(code, AFFINE_VOA_BAD_REQUEST);
        assert!(text.is_none());
        assert!(last_error(runner).unwrap().contains("unknown command"));

        let (code, _) = run(runner, "not json at all");
        assert_eq!(code, AFFINE_VOA_INVALID_ARGUMENT);
        assert!(last_error(runner).unwrap().contains("JSON"));

        let (code, _) = run(runner, r#"{"command": "singular", "n": 3, "q": 2}"#);
        assert_eq!(code, AFFINE_VOA_BAD_REQUEST);
        assert!(last_error(runner).unwrap().contains("odd"));

        // a successful call clears the stored error
        let (code, text) = run(runner, r#"{"command": "slice", "nilpotent": "minimal"}"#);
        assert_eq!(code, AFFINE_VOA_OK);
        assert!(text.is_some());
        assert!(last_error(runner).is_none());
        unsafe { affine_voa_runner_free(runner) };
    }

    #[test]
    fn null_pointers_are_rejected_not_dereferenced() {
        let mut out: *mut c_char = std::ptr::null_mut();
        let req = CString::new("{}").unwrap();
        unsafe {
            assert_eq!(
                affine_voa_run_json(std::ptr::null_mut(), req.as_ptr(), &mut out),
                AFFINE_VOA_INVALID_ARGUMENT
            );
            let runner = affine_voa_runner_new();
            assert_eq!(
                affine_voa_run_json(runner, std::ptr::null(), &mut out),
                AFFINE_VOA_INVALID_ARGUMENT
            );
            assert_eq!(
                affine_voa_run_json(runner, req.as_ptr(), std::ptr::null_mut()),
                AFFINE_VOA_INVALID_ARGUMENT
            );
            assert!(affine_voa_last_error(std::ptr::null()).is_null());
            affine_voa_string_free(std::ptr::null_mut());
            affine_voa_runner_free(std::ptr::null_mut());
            affine_voa_runner_free(runner);
        }
    }

    #[test]
    fn version_is_a_static_c_string() {
        let p = affine_voa_version();
        let v = unsafe { CStr::from_ptr(p) }.to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
