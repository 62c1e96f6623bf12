#ifndef VINCULUM_H
#define VINCULUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Refine by the first entry.
 */
#define VN_STAT_FIRST 0

/**
 * Refine by the last entry.
 */
#define VN_STAT_LAST 1

/**
 * Result of every fallible call.
 */
typedef enum VnStatus {
  VN_STATUS_OK = 0,
  /**
   * A pointer was `NULL`, an index was out of range or a buffer too short.
   */
  VN_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A pattern, permutation or rule name could not be parsed.
   */
  VN_STATUS_PARSE = 2,
  /**
   * The requested length exceeds the enumeration cap.
   */
  VN_STATUS_RESOURCE_CAP = 3,
  /**
   * No closed form or generating tree is known for the input.
   */
  VN_STATUS_UNSUPPORTED = 4,
  /**
   * The exact value does not fit the output type.
   */
  VN_STATUS_OVERFLOW = 5,
  /**
   * An internal error was caught at the boundary.
   */
  VN_STATUS_PANIC = 6,
} VnStatus;

/**
 * Avoiders counted by the value of their first or last entry.
 */
typedef struct VnDistribution VnDistribution;

/**
 * A matrix produced by a succession rule.
 */
typedef struct VnMatrix VnMatrix;

/**
 * A parsed set of generalized patterns.
 */
typedef struct VnPatternSet VnPatternSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Why the most recent call on this thread failed; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *vn_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *vn_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be `NULL` or a string returned by this library, not yet freed.
 */
void vn_string_free(char *s);

/**
 * Parses a comma-separated pattern list such as `"1-23,21-3"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum VnStatus vn_pattern_set_parse(const char *text, struct VnPatternSet **out);

/**
 * Canonical text of a pattern set; free with [`vn_string_free`].
 *
 * # Safety
 * `ps` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_pattern_set_to_string(const struct VnPatternSet *ps, char **out);

/**
 * # Safety
 * `ps` must be `NULL` or a live handle, not used afterwards.
 */
void vn_pattern_set_free(struct VnPatternSet *ps);

/**
 * Number of permutations of length `n` avoiding every pattern in `ps`,
 * enumerated exhaustively up to length `cap`.
 *
 * # Safety
 * `ps` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_count_avoiders(const struct VnPatternSet *ps, size_t n, size_t cap, uint64_t *out);

/**
 * Decimal form of [`vn_count_avoiders`]; free with [`vn_string_free`].
 *
 * # Safety
 * `ps` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_count_avoiders_string(const struct VnPatternSet *ps,
                                       size_t n,
                                       size_t cap,
                                       char **out);

/**
 * Closed-form number of avoiders of length `n` whose distinguished entry
 * (first or last, depending on the set) equals `k`.
 *
 * # Safety
 * `ps` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_closed_form_count(const struct VnPatternSet *ps,
                                   size_t n,
                                   size_t k,
                                   uint64_t *out);

/**
 * Refined distribution for lengths `1..=n_max`; `stat` is
 * [`VN_STAT_FIRST`] or [`VN_STAT_LAST`].
 *
 * # Safety
 * `ps` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_distribution_new(const struct VnPatternSet *ps,
                                  uint32_t stat,
                                  size_t n_max,
                                  size_t cap,
                                  struct VnDistribution **out);

/**
 * Largest length stored in `d`, or 0 for `NULL`.
 *
 * # Safety
 * `d` must be `NULL` or a live handle.
 */
size_t vn_distribution_n_max(const struct VnDistribution *d);

/**
 * Entry for length `n` and value `k`, both counted from 1.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_distribution_get(const struct VnDistribution *d,
                                  size_t n,
                                  size_t k,
                                  uint64_t *out);

/**
 * # Safety
 * `d` must be `NULL` or a live handle, not used afterwards.
 */
void vn_distribution_free(struct VnDistribution *d);

/**
 * Expands a built-in rule (`OMEGA_BELL`, `CATALAN`, `PAIR_INVOLUTION`,
 * `PHI_MOTZKIN`) to `depth` levels. `shifted` moves the diagonal of
 * `OMEGA_BELL` into the first column.
 *
 * # Safety
 * `rule` must be a NUL-terminated string; `out` must be writable.
 */
enum VnStatus vn_matrix_new(const char *rule, size_t depth, bool shifted, struct VnMatrix **out);

/**
 * Number of rows in `m`, or 0 for `NULL`.
 *
 * # Safety
 * `m` must be `NULL` or a live handle.
 */
size_t vn_matrix_depth(const struct VnMatrix *m);

/**
 * Stored width of row `n` (counted from 1).
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_matrix_row_len(const struct VnMatrix *m, size_t n, size_t *out);

/**
 * Entry at row `n`, column `k` (both from 1); zero past the stored width.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum VnStatus vn_matrix_get(const struct VnMatrix *m, size_t n, size_t k, uint64_t *out);

/**
 * # Safety
 * `m` must be `NULL` or a live handle, not used afterwards.
 */
void vn_matrix_free(struct VnMatrix *m);

/**
 * Coefficients of x^0..x^order of the column generating function `C_k` of
 * the Motzkin pair, written to `buf`, which must hold `order + 1` values.
 *
 * # Safety
 * `buf` must point to `len` writable `int64_t` values.
 */
enum VnStatus vn_column_gf(size_t k, size_t order, int64_t *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VINCULUM_H */
