#ifndef RECIPLAB_H
#define RECIPLAB_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_NULL_POINTER = 1,
  RL_STATUS_INVALID_UTF8 = 2,
  RL_STATUS_PARSE = 3,
  RL_STATUS_ZERO_DIVISOR = 4,
  RL_STATUS_POLE_AT_ONE = 5,
  RL_STATUS_DEGENERATE_PARAMS = 6,
  RL_STATUS_NOT_COPRIME = 7,
  RL_STATUS_OUT_OF_DOMAIN = 8,
  RL_STATUS_PRECISION_EXHAUSTED = 9,
  RL_STATUS_BAD_MODULUS = 10,
  RL_STATUS_CONGRUENCE_VIOLATION = 11,
  RL_STATUS_NON_PRIMITIVE = 12,
  RL_STATUS_EVEN_MODULUS = 13,
  RL_STATUS_TOLERANCE_UNREACHABLE = 14,
  RL_STATUS_INVALID_ARGUMENT = 15,
  RL_STATUS_ORDER_MISMATCH = 16,
  RL_STATUS_CONFIG = 17,
  RL_STATUS_INDEX_OUT_OF_RANGE = 18,
  RL_STATUS_PANIC = 99,
} RlStatus;

/**
 * A parameter grid for one theorem.
 */
typedef struct RlGrid RlGrid;

/**
 * An element of a cyclotomic field `Q(zeta_m)`, rationals included.
 */
typedef struct RlScalar RlScalar;

/**
 * The reports of a finished sweep, in grid order.
 */
typedef struct RlSweep RlSweep;

/**
 * Totals by report status.
 */
typedef struct RlSweepCounts {
  uintptr_t pass;
  uintptr_t fail;
  uintptr_t skipped_pole;
  uintptr_t finding;
} RlSweepCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call on the same thread.
 */
const char *rl_last_error(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rl_string_free(char *s);

/**
 * Parses a rational like `-5/2` or a cyclotomic expression like `3*z12^5 - 1/2`.
 *
 * # Safety
 * `text` must be a valid C string and `out` a writable pointer.
 */
enum RlStatus rl_scalar_parse(const char *text, struct RlScalar **out);

/**
 * Frees a scalar handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed.
 */
void rl_scalar_free(struct RlScalar *h);

/**
 * Writes the canonical text form, e.g. `1/2` or `-1 - z3`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_scalar_to_string(const struct RlScalar *h, char **out);

/**
 * Writes `{"conductor": m, "coeffs": [...]}`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_scalar_to_json(const struct RlScalar *h, char **out);

/**
 * Writes 1 to `out` when the scalar is zero, else 0.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_scalar_is_zero(const struct RlScalar *h, int32_t *out);

/**
 * Bernoulli number `B_n` as a rational string.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum RlStatus rl_bernoulli_number(uint32_t n, char **out);

/**
 * Bernoulli polynomial `B_n(x)` at a rational `x` given as text.
 *
 * # Safety
 * `x` must be a valid C string and `out` a writable pointer.
 */
enum RlStatus rl_bernoulli_poly(uint32_t n, const char *x, char **out);

/**
 * Frobenius-Euler number `H_n(u)`.
 *
 * # Safety
 * `u` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_fe_number(uint32_t n, const struct RlScalar *u, struct RlScalar **out);

/**
 * Frobenius-Euler polynomial `H_n(x, u)`.
 *
 * # Safety
 * `x`, `u` must be live handles and `out` a writable pointer.
 */
enum RlStatus rl_fe_poly(uint32_t n,
                         const struct RlScalar *x,
                         const struct RlScalar *u,
                         struct RlScalar **out);

/**
 * Classical Dedekind sum `s(h, k)` as a rational string.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum RlStatus rl_dedekind_sum(int64_t h, int64_t k, char **out);

/**
 * Reciprocity residual for `S_n(h, k | root^k)`; zero when the law holds.
 *
 * # Safety
 * `root` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_reciprocity_residual(uint32_t n,
                                      int64_t h,
                                      int64_t k,
                                      const struct RlScalar *root,
                                      struct RlScalar **out);

/**
 * Teichmuller representative of `a` mod `p^prec`, rendered like `57 + O(5^3)`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum RlStatus rl_teichmuller(int64_t a, uint64_t p, int64_t prec, char **out);

/**
 * Built-in grid for a theorem id such as `th11` or `witt`.
 *
 * # Safety
 * `name` must be a valid C string and `out` a writable pointer.
 */
enum RlStatus rl_grid_default(const char *name, struct RlGrid **out);

/**
 * Parses a flat TOML grid. `name` may be NULL when the text carries a
 * `theorem` key.
 *
 * # Safety
 * `toml` must be a valid C string, `name` NULL or a valid C string, and
 * `out` a writable pointer.
 */
enum RlStatus rl_grid_parse(const char *name, const char *toml, struct RlGrid **out);

/**
 * Frees a grid handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed.
 */
void rl_grid_free(struct RlGrid *h);

/**
 * Runs the sweep on `jobs` threads (0 means 1).
 *
 * # Safety
 * `grid` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_sweep_run(const struct RlGrid *grid, uint32_t jobs, struct RlSweep **out);

/**
 * Frees a sweep handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed.
 */
void rl_sweep_free(struct RlSweep *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_sweep_counts(const struct RlSweep *h, struct RlSweepCounts *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_sweep_len(const struct RlSweep *h, uintptr_t *out);

/**
 * One report as a JSON object.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum RlStatus rl_sweep_report_json(const struct RlSweep *h, uintptr_t index, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECIPLAB_H */
