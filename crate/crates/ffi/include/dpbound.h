#ifndef DPBOUND_H
#define DPBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Values 2..=5 mirror the CLI exit codes.
 */
typedef enum DpStatus {
  DP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DP_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed input: bad JSON, invalid UTF-8, unknown names.
   */
  DP_STATUS_INPUT = 2,
  /**
   * A size, range or work cap was exceeded.
   */
  DP_STATUS_RANGE = 3,
  /**
   * A mathematical precondition of the requested bound does not hold.
   */
  DP_STATUS_PRECONDITION = 4,
  /**
   * An internal invariant was violated.
   */
  DP_STATUS_INTERNAL = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  DP_STATUS_PANIC = 6,
} DpStatus;

/**
 * Opaque certificate handle.
 */
typedef struct DpCertificate DpCertificate;

/**
 * Opaque polynomial handle.
 */
typedef struct DpPolynomial DpPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if the last call
 * succeeded. The caller owns the returned string.
 */
char *dp_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dp_string_free(char *s);

/**
 * Parses a polynomial from its JSON encoding.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DpStatus dp_polynomial_from_json(const char *json, struct DpPolynomial **out);

/**
 * Canonical JSON encoding of a polynomial. Free with [`dp_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_polynomial_to_json(const struct DpPolynomial *f, char **out);

/**
 * Number of monomials and variables of a polynomial.
 *
 * # Safety
 * `f` must be a live handle; both outputs must be writable.
 */
enum DpStatus dp_polynomial_shape(const struct DpPolynomial *f, size_t *terms, size_t *n_vars);

/**
 * Releases a polynomial handle. Null is ignored.
 *
 * # Safety
 * `f` must come from this library and not have been freed already.
 */
void dp_polynomial_free(struct DpPolynomial *f);

/**
 * Named benchmark family. `family` is one of `perm`, `hc`, `triangle`,
 * `stconn`, `clique`; `k` is only read for `clique`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum DpStatus dp_generate(const char *family, size_t n, size_t k, struct DpPolynomial **out);

/**
 * Largest separated set bound; `exact` selects exact clique search.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_bound_schnorr(const struct DpPolynomial *f,
                               bool exact,
                               struct DpCertificate **out);

/**
 * `(k,l)`-free bound.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_bound_klfree(const struct DpPolynomial *f,
                              uint64_t k,
                              uint64_t l,
                              struct DpCertificate **out);

/**
 * Rectangle bound; `by_length` splits by variable count instead of degree.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_bound_rectangle(const struct DpPolynomial *f,
                                 bool by_length,
                                 struct DpCertificate **out);

/**
 * Depth bound from factor-density decreases.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_bound_depth(const struct DpPolynomial *f, struct DpCertificate **out);

/**
 * Moves `cert` to the measure named `target` (e.g. `min-size`) for `f`.
 *
 * # Safety
 * Handles must be live; `target` must be NUL-terminated; `out` writable.
 */
enum DpStatus dp_certificate_transfer(const struct DpCertificate *cert,
                                      const struct DpPolynomial *f,
                                      const char *target,
                                      struct DpCertificate **out);

/**
 * The bound a certificate claims.
 *
 * # Safety
 * `cert` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_certificate_value(const struct DpCertificate *cert, uint64_t *out);

/**
 * Re-verifies the witness of `cert` against `f`. `ok` receives the verdict;
 * a rejected witness is not an error, but its reason is left in
 * [`dp_last_error_message`].
 *
 * # Safety
 * Handles must be live; `ok` must be writable.
 */
enum DpStatus dp_certificate_check(const struct DpPolynomial *f,
                                   const struct DpCertificate *cert,
                                   bool *ok);

/**
 * JSON encoding of a certificate. Free with [`dp_string_free`].
 *
 * # Safety
 * `cert` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_certificate_to_json(const struct DpCertificate *cert, char **out);

/**
 * Parses a certificate from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DpStatus dp_certificate_from_json(const char *json, struct DpCertificate **out);

/**
 * Releases a certificate handle. Null is ignored.
 *
 * # Safety
 * `cert` must come from this library and not have been freed already.
 */
void dp_certificate_free(struct DpCertificate *cert);

/**
 * Exact minimum size of a circuit producing `f`, searched up to `max_size`
 * gates. Writes -1 when no circuit of that size exists.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpStatus dp_oracle_produce_size(const struct DpPolynomial *f, size_t max_size, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPBOUND_H */
