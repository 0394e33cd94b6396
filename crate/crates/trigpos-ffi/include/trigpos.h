#ifndef TRIGPOS_H
#define TRIGPOS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum TrigposStatus {
  TRIGPOS_STATUS_OK = 0,
  // A required pointer argument was null.
  TRIGPOS_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  TRIGPOS_STATUS_INVALID_UTF8 = 2,
  // An expression, constant, goal file or certificate did not parse.
  TRIGPOS_STATUS_PARSE = 3,
  // The goal or configuration is outside the prover's domain.
  TRIGPOS_STATUS_INVALID_INPUT = 4,
  // The prover exhausted its search without a certificate.
  TRIGPOS_STATUS_PROOF_FAILED = 5,
  // A certificate failed independent checking.
  TRIGPOS_STATUS_CHECK_FAILED = 6,
  // Reading or writing a bundle failed.
  TRIGPOS_STATUS_IO = 7,
  // The library panicked; this is a bug.
  TRIGPOS_STATUS_INTERNAL = 8,
} TrigposStatus;

// A proof certificate.
typedef struct TrigposCertificate TrigposCertificate;

// A proof goal together with its prover configuration.
typedef struct TrigposGoal TrigposGoal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the library as a static nul-terminated string.
const char *trigpos_version(void);

// Message of the last failed call on this thread, or null after a
// successful call. Valid until the next call into the library.
const char *trigpos_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void trigpos_string_free(char *s);

// Builds a goal `expr > 0` on the open interval `(lo, hi)` with the
// default configuration. `lo` and `hi` accept constants such as `pi/2`.
//
// # Safety
// String arguments must be nul-terminated; `out` must be writable.
enum TrigposStatus trigpos_goal_new(const char *name,
                                    const char *expr,
                                    const char *lo,
                                    const char *hi,
                                    struct TrigposGoal **out);

// Parses a goal file (the `key: value` format read by the command line
// tool), including its split and degree hints.
//
// # Safety
// `goal_text` must be nul-terminated; `out` must be writable.
enum TrigposStatus trigpos_goal_parse(const char *goal_text, struct TrigposGoal **out);

// Caps the Taylor degrees the prover may use.
//
// # Safety
// `goal` must be a live goal handle.
enum TrigposStatus trigpos_goal_set_max_degree(struct TrigposGoal *goal, uint32_t max_degree);

// Releases a goal. Null is ignored.
//
// # Safety
// `goal` must come from this library and not have been freed.
void trigpos_goal_free(struct TrigposGoal *goal);

// Proves the goal. On success `*out` receives a certificate that has
// already passed independent checking.
//
// # Safety
// `goal` must be a live goal handle; `out` must be writable.
enum TrigposStatus trigpos_prove(const struct TrigposGoal *goal, struct TrigposCertificate **out);

// Replays every obligation of the certificate. Returns `Ok` when all
// pass and `CheckFailed` otherwise; the full report is stored in `*report`
// when `report` is not null.
//
// # Safety
// `cert` must be a live certificate handle; `report`, if not null, must be
// writable.
enum TrigposStatus trigpos_certificate_check(const struct TrigposCertificate *cert, char **report);

// Serializes the certificate as JSON into `*out`.
//
// # Safety
// `cert` must be a live certificate handle; `out` must be writable.
enum TrigposStatus trigpos_certificate_to_json(const struct TrigposCertificate *cert, char **out);

// Parses a certificate from JSON. The certificate is not checked; call
// [`trigpos_certificate_check`] before trusting it.
//
// # Safety
// `json` must be nul-terminated; `out` must be writable.
enum TrigposStatus trigpos_certificate_from_json(const char *json, struct TrigposCertificate **out);

// Writes the certificate as a bundle directory.
//
// # Safety
// `cert` must be a live certificate handle; `dir` must be nul-terminated.
enum TrigposStatus trigpos_certificate_write_bundle(const struct TrigposCertificate *cert,
                                                    const char *dir);

// Reads a certificate from a bundle directory without checking it.
//
// # Safety
// `dir` must be nul-terminated; `out` must be writable.
enum TrigposStatus trigpos_certificate_read_bundle(const char *dir,
                                                   struct TrigposCertificate **out);

// Releases a certificate. Null is ignored.
//
// # Safety
// `cert` must come from this library and not have been freed.
void trigpos_certificate_free(struct TrigposCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIGPOS_H */
