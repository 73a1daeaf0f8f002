#ifndef POLYZETA_H
#define POLYZETA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of a call. The nonzero values match the command line exit codes
 * where they overlap.
 */
typedef enum PzStatus {
  PZ_OK = 0,
  /**
   * Outside the domain or region of the requested method.
   */
  PZ_ERR_DOMAIN = 2,
  /**
   * The method did not reach the requested accuracy.
   */
  PZ_ERR_CONVERGENCE = 3,
  /**
   * Malformed input string or argument.
   */
  PZ_ERR_USAGE = 4,
  /**
   * A required pointer was null.
   */
  PZ_ERR_NULL = 5,
  /**
   * Internal failure; the handle arguments are left untouched.
   */
  PZ_ERR_INTERNAL = 6,
} PzStatus;

/**
 * Precomputed k^{−s} for repeated evaluation at one order s.
 */
typedef struct PzCache PzCache;

/**
 * A complex value with the number of digits it was computed to.
 */
typedef struct PzValue PzValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *pz_last_error(void);

/**
 * Li_s(z) anywhere in the plane, to `digits` decimal digits.
 */
enum PzStatus pz_polylog(const char *s, const char *z, uint32_t digits, struct PzValue **out);

/**
 * ζ(s, q) by Euler–Maclaurin summation.
 */
enum PzStatus pz_hurwitz(const char *s, const char *q, uint32_t digits, struct PzValue **out);

/**
 * F(q; s) = Li_s(e^{2πiq}) for real 0 < q ≤ 1.
 */
enum PzStatus pz_periodic(const char *q, const char *s, uint32_t digits, struct PzValue **out);

/**
 * Li_s(z) continued along `word`, e.g. `"g1 g0 g1^-1"`.
 */
enum PzStatus pz_sheet(const char *word,
                       const char *s,
                       const char *z,
                       uint32_t digits,
                       struct PzValue **out);

/**
 * Real and imaginary parts rounded to double.
 */
enum PzStatus pz_value_parts(const struct PzValue *v, double *re, double *im);

/**
 * `"<re> <im>"` in scientific notation with the digits the value was
 * computed to. Free the result with [`pz_string_free`].
 */
enum PzStatus pz_value_to_string(const struct PzValue *v, char **out);

void pz_string_free(char *s);

void pz_value_free(struct PzValue *v);

/**
 * Cache of k^{−s} sized for the accelerated sum at the given point and
 * digits; reusable for any z needing no more terms.
 */
enum PzStatus pz_cache_new(const char *s,
                           const char *z_hint,
                           uint32_t digits,
                           struct PzCache **out);

/**
 * Number of cached k^{−s} values.
 */
size_t pz_cache_len(const struct PzCache *c);

void pz_cache_free(struct PzCache *c);

/**
 * Li_s(z) by the accelerated sum at the cache's order s, reusing its
 * powers when the working precision matches.
 */
enum PzStatus pz_polylog_cached(const struct PzCache *c,
                                const char *z,
                                uint32_t digits,
                                struct PzValue **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYZETA_H */
