//! Deterministic JSON report envelopes with reproducibility manifests.
//!
//! Every command-line run emits a single JSON document shaped as
//!
//! ```json
//! {
//!   "payload": {
//!     "command": "…",
//!     "version": "…",
//!     "claim": "…",
//!     "parameters": { "n": 3, "k": "-7/3", "seed": 2024, … },
//!     "certified": true,
//!     "result": { … }
//!   },
//!   "wall_time_ms": 12,
//!   "digest": "sha256:…"
//! }
//! ```
//!
//! The digest is taken over the compact serialization of `payload` alone;
//! wall time lives outside it.  All object keys serialize in sorted order
//! and every random choice is driven by the seed recorded in the
//! parameters, so re-running a command with identical parameters produces a
//! byte-identical payload and digest.  Rationals appear as `"p/q"` strings
//! and weights as coordinate arrays, keeping every value exact.

use crate::rat::{format_q, Q};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exact rational as a `"p/q"` string value.
pub fn rational(x: &Q) -> Value {
    Value::String(format_q(x))
}

/// Root-lattice weight as a coordinate array.
pub fn weight_coords(w: &[i64]) -> Value {
    json!(w)
}

/// Hex SHA-256 of the compact serialization.
pub fn payload_digest(payload: &Value) -> String {
    let s = serde_json::to_string(payload).expect("payload serializes");
    let mut h = Sha256::new();
    h.update(s.as_bytes());
    format!("sha256:{:x}", h.finalize())
}

/// Assembles the manifest-carrying payload for one run.
pub fn payload(
    command: &str,
    claim: &str,
    parameters: Value,
    certified: bool,
    result: Value,
) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "claim": claim,
        "parameters": parameters,
        "certified": certified,
        "result": result,
    })
}

/// Wraps a payload with its digest and the elapsed wall time.
pub fn envelope(payload: Value, wall_time_ms: u128) -> Value {
    let digest = payload_digest(&payload);
    json!({
        "payload": payload,
        "wall_time_ms": wall_time_ms as u64,
        "digest": digest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qr;

    #[test]
    fn digests_depend_only_on_payload_bytes() {
        let p1 = payload("demo", "claim", json!({"n": 3, "seed": 1}), true, json!({"x": 1}));
        let p2 = payload("demo", "claim", json!({"n": 3, "seed": 1}), true, json!({"x": 1}));
        let p3 = payload("demo", "claim", json!({"n": 3, "seed": 2}), true, json!({"x": 1}));
        assert_eq!(payload_digest(&p1), payload_digest(&p2));
        assert_ne!(payload_digest(&p1), payload_digest(&p3));
        // wall time stays outside the digested section
        let e1 = envelope(p1, 10);
        let e2 = envelope(p2, 9999);
        assert_eq!(e1["digest"], e2["digest"]);
        assert_ne!(e1["wall_time_ms"], e2["wall_time_ms"]);
    }

    #[test]
    fn serialization_orders_keys_canonically() {
        let a = json!({"b": 1, "a": 2});
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"a":2,"b":1}"#);
    }

    #[test]
    fn exact_values_round_trip_as_strings() {
        assert_eq!(rational(&qr(-7, 3)), Value::String("-7/3".to_string()));
        assert_eq!(weight_coords(&[2, 1]), json!([2, 1]));
    }
}
