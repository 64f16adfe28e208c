#ifndef NONPERIOD_H
#define NONPERIOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum NpStatus {
  NP_STATUS_OK = 0,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  NP_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  /**
   * Malformed input: domain JSON, fraction text, dimensions, arities.
   */
  NP_STATUS_INVALID_INPUT = 2,
  /**
   * A budget ran out; retrying with larger limits may succeed.
   */
  NP_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * The value involves `0^0` under the indeterminate convention.
   */
  NP_STATUS_INDETERMINATE = 4,
  /**
   * The library panicked. This is a bug.
   */
  NP_STATUS_INTERNAL = 5,
} NpStatus;

/**
 * Convention for `0^0` in enumerated functions.
 */
typedef enum NpZeroPow {
  NP_ZERO_POW_ONE = 0,
  NP_ZERO_POW_INDETERMINATE = 1,
} NpZeroPow;

/**
 * The diagonal real with its computed bits cached across calls.
 */
typedef struct NpDiagonal NpDiagonal;

/**
 * A parsed basic semi-algebraic domain.
 */
typedef struct NpDomain NpDomain;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null if none. The caller
 * frees it with [`np_string_free`].
 */
char *np_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void np_string_free(char *s);

/**
 * Cantor pairing `J(x, y)`. Returns `NP_STATUS_INVALID_INPUT` on overflow.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum NpStatus np_pair(uint64_t x, uint64_t y, uint64_t *out);

/**
 * Inverse pairing: `z = J(*left, *right)`.
 *
 * # Safety
 * `left` and `right` must be valid for writes.
 */
enum NpStatus np_unpair(uint64_t z, uint64_t *left, uint64_t *right);

/**
 * `ḡ_e(index)` as `"p/q"`; the real `β_e` lies within `1/(6·7^index)`.
 *
 * # Safety
 * `value_out` must be valid for writes.
 */
enum NpStatus np_beta(uint64_t e,
                      uint64_t index,
                      uint64_t budget_bits,
                      uint64_t budget_nodes,
                      enum NpZeroPow zero_pow,
                      char **value_out);

/**
 * Creates a diagonal computation. Returns null on zero budgets.
 */
struct NpDiagonal *np_diagonal_new(uint64_t budget_bits,
                                   uint64_t budget_nodes,
                                   enum NpZeroPow zero_pow);

/**
 * # Safety
 * `d` must come from [`np_diagonal_new`] and not have been freed. Null is ignored.
 */
void np_diagonal_free(struct NpDiagonal *d);

/**
 * Writes `ε_1..ε_count` (each 0 or 1) to `out[0..count]`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be valid for `count` writes.
 */
enum NpStatus np_diagonal_epsilons(struct NpDiagonal *d, uintptr_t count, uint8_t *out);

/**
 * The first `count` certified decimal digits of `α/2`, without the
 * leading `"0."`.
 *
 * # Safety
 * `d` must be a live handle; `digits_out` must be valid for writes.
 */
enum NpStatus np_diagonal_alpha_digits(struct NpDiagonal *d, uintptr_t count, char **digits_out);

/**
 * Parses domain JSON into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum NpStatus np_domain_from_json(const char *json, struct NpDomain **out);

/**
 * # Safety
 * `d` must come from [`np_domain_from_json`] and not have been freed. Null is ignored.
 */
void np_domain_free(struct NpDomain *d);

/**
 * Inner Riemann volume on the `n`-grid as `"p/q"`.
 *
 * # Safety
 * `d` must be a live handle; the out-pointers must be valid for writes.
 */
enum NpStatus np_riemann_volume(const struct NpDomain *d,
                                uint64_t n,
                                uint32_t max_depth,
                                char **volume_out,
                                uint64_t *unknown_count_out);

/**
 * Doubles the grid from `n0` until successive volumes differ by less than
 * `tol / 2`; `tol` is `"p/q"`.
 *
 * # Safety
 * `d` must be a live handle; `tol` a NUL-terminated string; the
 * out-pointers must be valid for writes.
 */
enum NpStatus np_approximate_volume(const struct NpDomain *d,
                                    const char *tol,
                                    uint64_t n0,
                                    uint64_t max_n,
                                    uint32_t max_depth,
                                    char **volume_out,
                                    uint64_t *n_used_out,
                                    uint64_t *unknown_count_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NONPERIOD_H */
