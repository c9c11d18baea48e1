#ifndef EIGENWALK_H
#define EIGENWALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. 2, 3 and 4 agree with the command-line exit codes.
 */
typedef enum EwStatus {
  EW_STATUS_OK = 0,
  EW_STATUS_NULL_POINTER = 1,
  EW_STATUS_PRECONDITION = 2,
  EW_STATUS_VERIFICATION_FAILED = 3,
  EW_STATUS_INTERNAL = 4,
  EW_STATUS_INVALID_UTF8 = 5,
} EwStatus;

/**
 * Opaque annulus-walk certificate.
 */
typedef struct EwCertificate EwCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *ew_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ew_string_free(char *s);

/**
 * `v(w)` for `z -> z^k chi^m` as `num/den`.
 *
 * # Safety
 * `num` and `den` must be valid for writes.
 */
enum EwStatus ew_w_valuation(uint32_t k, uint32_t m, int64_t *num, int64_t *den);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EwStatus ew_in_boundary(uint32_t k, uint32_t m, bool *out);

/**
 * Order of `alpha/beta` for `X^2 - a X + p^(k-1)`; 0 means infinite.
 *
 * # Safety
 * `a` must be a NUL-terminated string and `order` valid for writes.
 */
enum EwStatus ew_ratio_order(const char *a, uint32_t k, uint64_t p, uint32_t *order);

/**
 * # Safety
 * `a` must be a NUL-terminated string and `out` valid for writes.
 */
enum EwStatus ew_is_n_regular(const char *a, uint32_t k, uint64_t p, uint32_t n, bool *out);

/**
 * Valuations of the two roots of `X^2 - a X + p^(k-1)`, as strings.
 *
 * # Safety
 * `a` must be a NUL-terminated string; `alpha` and `beta` valid for writes.
 */
enum EwStatus ew_refinement_slopes(const char *a,
                                   uint32_t k,
                                   uint64_t p,
                                   char **alpha,
                                   char **beta);

/**
 * JSON report of `slopes --level LEVEL --k K --op OP`, as printed by the CLI.
 *
 * # Safety
 * `level` and `op` must be NUL-terminated strings; `out` valid for writes.
 */
enum EwStatus ew_slopes_json(const char *level, uint32_t k, const char *op, char **out);

/**
 * Canonical certificate walking from `X_i` to `X_j`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EwStatus ew_certificate_connect(uint64_t i, uint64_t j, struct EwCertificate **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum EwStatus ew_certificate_from_json(const char *json, struct EwCertificate **out);

/**
 * # Safety
 * `cert` must be a live handle and `out` valid for writes.
 */
enum EwStatus ew_certificate_to_json(const struct EwCertificate *cert, char **out);

/**
 * `Ok` for a valid certificate, `VerificationFailed` otherwise. The number of
 * violations is written to `violations` when it is not null; the last error
 * message lists them.
 *
 * # Safety
 * `cert` must be a live handle; `violations` null or valid for writes.
 */
enum EwStatus ew_certificate_verify(const struct EwCertificate *cert, size_t *violations);

/**
 * # Safety
 * `cert` must be null or a handle from this library, not yet freed.
 */
void ew_certificate_free(struct EwCertificate *cert);

/**
 * Number of moves in the certificate, or 0 for a null handle.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
size_t ew_certificate_len(const struct EwCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENWALK_H */
