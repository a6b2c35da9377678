#ifndef AFFINE_VOA_H
#define AFFINE_VOA_H

/* Generated by cbindgen from the affine-voa-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define AFFINE_VOA_OK 0

#define AFFINE_VOA_CHECK_FAILED 1

#define AFFINE_VOA_BAD_REQUEST 2

#define AFFINE_VOA_INVALID_ARGUMENT 3

#define AFFINE_VOA_INTERNAL_ERROR 4

// Opaque handle holding the last error message of a sequence of runs.
typedef struct AffineVoaRunner AffineVoaRunner;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Allocates a runner.  Release with [`affine_voa_runner_free`].
struct AffineVoaRunner *affine_voa_runner_new(void);

// Releases a runner allocated by [`affine_voa_runner_new`].  A null pointer
// is a no-op.
//
// # Safety
// `runner` must be null or a pointer obtained from
// [`affine_voa_runner_new`] that has not been freed already.
void affine_voa_runner_free(struct AffineVoaRunner *runner);

// The runner's last error message, or null when the previous call
// succeeded.  The pointer stays valid until the next call on this runner.
//
// # Safety
// `runner` must be a valid runner pointer.
const char *affine_voa_last_error(const struct AffineVoaRunner *runner);

// Runs one JSON request and writes the report envelope to `*report_out` as
// a NUL-terminated string owned by the caller.  See the module docs for
// the request shape and return codes.
//
// # Safety
// `runner` must be a valid runner pointer, `request` a NUL-terminated
// string, and `report_out` a valid pointer to a `char *`.
int affine_voa_run_json(struct AffineVoaRunner *runner, const char *request, char **report_out);

// Releases a string returned through `report_out`.  A null pointer is a
// no-op.
//
// # Safety
// `s` must be null or a pointer received from this library that has not
// been freed already.
void affine_voa_string_free(char *s);

// The library version as a static NUL-terminated string.
const char *affine_voa_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFINE_VOA_H */
