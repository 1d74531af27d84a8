#ifndef CIRCULANT_PRIMALITY_H
#define CIRCULANT_PRIMALITY_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible entry point.
 */
typedef enum CpStatus {
  /*
   Success.
   */
  CP_STATUS_OK = 0,
  /*
   An argument was outside the operation's domain.
   */
  CP_STATUS_ERR_DOMAIN = -1,
  /*
   Coefficient rounding failed at the maximum working precision.
   */
  CP_STATUS_ERR_PRECISION = -2,
  /*
   A budgeted computation timed out.
   */
  CP_STATUS_ERR_TIMEOUT = -3,
  /*
   A null pointer or malformed string was passed.
   */
  CP_STATUS_ERR_INVALID_ARGUMENT = -4,
  /*
   A numeric string failed to parse.
   */
  CP_STATUS_ERR_PARSE = -5,
  /*
   Internal failure (panic caught at the boundary).
   */
  CP_STATUS_ERR_INTERNAL = -6,
} CpStatus;

/*
 Method selector mirrored across the ABI.
 */
typedef enum CpMethod {
  CP_METHOD_TRIAL_DIVISION = 0,
  CP_METHOD_OPTIMIZED_TRIAL_DIVISION = 1,
  CP_METHOD_MILLER_RABIN = 2,
  CP_METHOD_AKS = 3,
  CP_METHOD_CIRCULANT_FULL = 4,
  CP_METHOD_CIRCULANT_SIMPLIFIED = 5,
} CpMethod;

/*
 Opaque configuration handle.
 */
typedef struct CpContext CpContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates a context with the default configuration (20 Miller-Rabin rounds,
 seed 1, branch threshold 10^6). Release with `cp_context_free`.
 */
struct CpContext *cp_context_new(void);

/*
 Releases a context created by `cp_context_new`. Null is a no-op.

 # Safety
 `ctx` must be a pointer previously returned by `cp_context_new` that has
 not been freed.
 */
void cp_context_free(struct CpContext *ctx);

/*
 # Safety
 `ctx` must be a live context pointer.
 */
enum CpStatus cp_context_set_mr_rounds(struct CpContext *ctx, uint32_t rounds);

/*
 # Safety
 `ctx` must be a live context pointer.
 */
enum CpStatus cp_context_set_seed(struct CpContext *ctx, uint64_t seed);

/*
 # Safety
 `ctx` must be a live context pointer.
 */
enum CpStatus cp_context_set_branch_threshold(struct CpContext *ctx, uint64_t threshold);

/*
 Starting decimal digits for minimal-polynomial expansion (0 = automatic).

 # Safety
 `ctx` must be a live context pointer.
 */
enum CpStatus cp_context_set_precision(struct CpContext *ctx, uint32_t digits);

/*
 Tests `n` for primality with the given method; writes 1 (prime) or 0
 (composite) into `out_is_prime`.

 # Safety
 `ctx` must be a live context pointer and `out_is_prime` a valid pointer.
 */
enum CpStatus cp_is_prime_u64(const struct CpContext *ctx,
                              uint64_t n,
                              enum CpMethod method,
                              int32_t *out_is_prime);

/*
 Arbitrary-precision variant of `cp_is_prime_u64`; `n` is a decimal string.

 # Safety
 `ctx` must be a live context pointer, `n` a NUL-terminated string, and
 `out_is_prime` a valid pointer.
 */
enum CpStatus cp_is_prime_str(const struct CpContext *ctx,
                              const char *n,
                              enum CpMethod method,
                              int32_t *out_is_prime);

/*
 Number of Galois orbits of the eigenvalue indices, counted directly.

 # Safety
 `out_count` must be a valid pointer.
 */
enum CpStatus cp_orbit_count_direct(uint64_t n, uint64_t *out_count);

/*
 Orbit count from the divisor formula (disagrees with the direct count on
 prime powers; see the library documentation).

 # Safety
 `out_count` must be a valid pointer.
 */
enum CpStatus cp_orbit_count_divisor_formula(uint64_t n, uint64_t *out_count);

/*
 Number of irreducible factors of the minimal polynomial of C_n.

 # Safety
 `ctx` must be a live context pointer and `out_count` a valid pointer.
 */
enum CpStatus cp_factor_count(const struct CpContext *ctx, uint64_t n, uint64_t *out_count);

/*
 The spectral regularity statistic S(n).

 # Safety
 `out_value` must be a valid pointer.
 */
enum CpStatus cp_spectral_value(uint64_t n, double *out_value);

/*
 Minimal-polynomial factors of C_n as a JSON document
 `{"n": n, "factors": [[c0, c1, ...], ...]}`. Free with `cp_string_free`.

 # Safety
 `ctx` must be a live context pointer and `out_json` a valid pointer.
 */
enum CpStatus cp_minpoly_json(const struct CpContext *ctx, uint64_t n, char **out_json);

/*
 Orbit partition of C_n as JSON `{"n": n, "orbits": [[...], ...]}`.
 Free with `cp_string_free`.

 # Safety
 `out_json` must be a valid pointer.
 */
enum CpStatus cp_orbits_json(uint64_t n, char **out_json);

/*
 Agreement sweep of [lo, hi] between two methods; writes the number of
 disagreements (expected 0).

 # Safety
 `ctx` must be a live context pointer and `out_disagreements` valid.
 */
enum CpStatus cp_sweep_validate(const struct CpContext *ctx,
                                uint64_t lo,
                                uint64_t hi,
                                enum CpMethod method,
                                enum CpMethod baseline,
                                uint64_t *out_disagreements);

/*
 Releases a string returned by this library. Null is a no-op.

 # Safety
 `s` must be a string pointer previously returned by this library that has
 not been freed.
 */
void cp_string_free(char *s);

/*
 Library version as a static string; do not free.
 */
const char *cp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCULANT_PRIMALITY_H */
