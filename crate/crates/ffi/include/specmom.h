#ifndef SPECMOM_H
#define SPECMOM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported function.
 */
typedef enum SmStatus {
  SM_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  SM_STATUS_NULL = 1,
  SM_STATUS_INVALID_ARGUMENT = 2,
  SM_STATUS_PARSE = 3,
  /**
   * A string argument was not UTF-8.
   */
  SM_STATUS_UTF8 = 4,
  /**
   * A panic was caught at the boundary.
   */
  SM_STATUS_INTERNAL = 5,
} SmStatus;

/**
 * Opaque spectrum handle.
 */
typedef struct SmSpectrum SmSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Spectrum of a quasihomogeneous singularity with weights
 * `num[i]/den[i]`, `i < len`.
 *
 * # Safety
 * `num` and `den` must point to `len` readable values; `out` must be writable.
 */
enum SmStatus sm_spectrum_from_weights(const int64_t *num,
                                       const int64_t *den,
                                       size_t len,
                                       struct SmSpectrum **out);

/**
 * Spectrum of the hyperbolic singularity `T_{p,q,r}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SmStatus sm_spectrum_tpqr(int64_t p, int64_t q, int64_t r, struct SmSpectrum **out);

/**
 * Spectrum of an irreducible plane curve with Puiseux pairs `(n[i], r[i])`.
 *
 * # Safety
 * `n` and `r` must point to `len` readable values; `out` must be writable.
 */
enum SmStatus sm_spectrum_curve(const int64_t *n,
                                const int64_t *r,
                                size_t len,
                                struct SmSpectrum **out);

/**
 * Reads a spectrum in the text format produced by `sm_spectrum_to_text`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SmStatus sm_spectrum_parse(const char *text, struct SmSpectrum **out);

/**
 * Spectrum of the sum of two singularities in separate variables.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum SmStatus sm_spectrum_thom_sebastiani(const struct SmSpectrum *a,
                                          const struct SmSpectrum *b,
                                          struct SmSpectrum **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void sm_spectrum_free(struct SmSpectrum *s);

/**
 * The `n` of the spectrum, i.e. the number of variables minus one.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SmStatus sm_spectrum_dimension(const struct SmSpectrum *s, int64_t *out);

/**
 * Total multiplicity as a `p/q` string.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SmStatus sm_spectrum_milnor(const struct SmSpectrum *s, char **out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SmStatus sm_spectrum_to_text(const struct SmSpectrum *s, char **out);

/**
 * Exact Bernoulli moment `Gamma_{2k}(V, nu)` of the spectrum.
 *
 * # Safety
 * `s` must be a live handle, `nu` a NUL-terminated rational; `out` must be writable.
 */
enum SmStatus sm_gamma_moment(const struct SmSpectrum *s, const char *nu, size_t k, char **out);

/**
 * Checks the alternating signs of `Gamma_{2k}` for `k <= k_max`.
 * `mode` 0 uses `nu = n+1` with strict signs, 1 uses the spectral width.
 *
 * # Safety
 * `s` must be a live handle; `passed` must be writable.
 */
enum SmStatus sm_check_conjecture(const struct SmSpectrum *s,
                                  int32_t mode,
                                  size_t k_max,
                                  bool *passed);

/**
 * `B_n` as a `p/q` string.
 *
 * # Safety
 * `out` must be writable.
 */
enum SmStatus sm_bernoulli_number(size_t n, char **out);

/**
 * Exact `A_k(x, nu)`.
 *
 * # Safety
 * `x` and `nu` must be NUL-terminated rationals; `out` must be writable.
 */
enum SmStatus sm_a_eval(size_t k, const char *x, const char *nu, char **out);

/**
 * Writes the normalized moments for `k = 1..=k_max` into `values`, which
 * must hold at least `k_max` doubles.
 *
 * # Safety
 * `s` must be a live handle, `nu` a NUL-terminated rational and `values`
 * writable for `len` doubles.
 */
enum SmStatus sm_trace_convergence(const struct SmSpectrum *s,
                                   const char *nu,
                                   size_t k_max,
                                   double *values,
                                   size_t len);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *sm_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `p` must be null or a string from this library not yet freed.
 */
void sm_string_free(char *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECMOM_H */
