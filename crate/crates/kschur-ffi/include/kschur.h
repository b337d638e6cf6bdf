/* C interface to the kschur exact combinatorics library. */

#ifndef KSCHUR_H
#define KSCHUR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum KsStatus {
  /**
   * Success.
   */
  KS_STATUS_OK = 0,
  /**
   * Malformed input (bad partition, bound violation, bad weight, ...).
   */
  KS_STATUS_INVALID_INPUT = 1,
  /**
   * An internal anomaly: the library detected a contradiction with its
   * combinatorial model.
   */
  KS_STATUS_ANOMALY = 3,
  /**
   * A required pointer argument was null.
   */
  KS_STATUS_NULL_POINTER = 4,
  /**
   * The caller-provided buffer is too small.
   */
  KS_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * A panic was caught at the boundary.
   */
  KS_STATUS_INTERNAL = 6,
} KsStatus;

/**
 * Opaque handle to a k-Kostka matrix.
 */
typedef struct KsKostkaMatrix KsKostkaMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a caller-owned string.
 */
char *ks_version(void);

/**
 * Releases a string returned by this library. A null pointer is a no-op.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and not yet
 * freed.
 */
void ks_string_free(char *s);

/**
 * Message of the most recent failure on this thread, as a caller-owned
 * string; null when no failure has been recorded.
 */
char *ks_last_error(void);

/**
 * Charge of a word of partition weight.
 *
 * # Safety
 * `letters` must point to `len` readable values; `out` must be writable.
 */
enum KsStatus ks_charge_word(const uint32_t *letters, uintptr_t len, uint64_t *out);

/**
 * Maps a k-bounded partition to its (k+1)-core. `out_len` always receives
 * the required length; parts are written when `cap` suffices.
 *
 * # Safety
 * Pointer arguments must be valid as described for [`ks_charge_word`].
 */
enum KsStatus ks_core_from_bounded(uint32_t k,
                                   const uint32_t *parts,
                                   uintptr_t len,
                                   uint32_t *out,
                                   uintptr_t cap,
                                   uintptr_t *out_len);

/**
 * Maps a (k+1)-core to its k-bounded partition.
 *
 * # Safety
 * Pointer arguments must be valid as described for [`ks_charge_word`].
 */
enum KsStatus ks_bounded_from_core(uint32_t k,
                                   const uint32_t *parts,
                                   uintptr_t len,
                                   uint32_t *out,
                                   uintptr_t cap,
                                   uintptr_t *out_len);

/**
 * Builds the k-Kostka matrix for the given degree.
 *
 * # Safety
 * `out` must be a writable pointer slot.
 */
enum KsStatus ks_kostka_matrix_new(uint32_t k, uint32_t degree, struct KsKostkaMatrix **out);

/**
 * Releases a matrix handle. A null pointer is a no-op.
 *
 * # Safety
 * `matrix` must come from [`ks_kostka_matrix_new`] and not be freed twice.
 */
void ks_kostka_matrix_free(struct KsKostkaMatrix *matrix);

/**
 * Dimension of the matrix (number of indexing partitions); 0 on null.
 *
 * # Safety
 * `matrix` must be a live handle or null.
 */
uintptr_t ks_kostka_matrix_dim(const struct KsKostkaMatrix *matrix);

/**
 * Serializes the whole matrix (k, degree, index, entries) as JSON.
 * Returns null on a null handle.
 *
 * # Safety
 * `matrix` must be a live handle or null.
 */
char *ks_kostka_matrix_to_json(const struct KsKostkaMatrix *matrix);

/**
 * Expands the k-Schur function with parameter t indexed by `lambda` in the
 * named basis ("hl", "schur", "monomial", "homogeneous") and returns the
 * expansion as JSON through `out_json`.
 *
 * # Safety
 * `lambda` must point to `len` readable values; `basis` must be a valid
 * NUL-terminated string; `out_json` must be writable.
 */
enum KsStatus ks_kschur_expand_json(uint32_t k,
                                    const uint32_t *lambda,
                                    uintptr_t len,
                                    const char *basis,
                                    char **out_json);

/**
 * Enumerates the counter-tableaux of the given k-weight and returns them
 * as a JSON array; with `with_stats` each element is an object carrying
 * the tableau and its statistics.
 *
 * # Safety
 * `weight` must point to `len` readable values; `out_json` must be
 * writable.
 */
enum KsStatus ks_abc_enumerate_json(uint32_t k,
                                    const uint32_t *weight,
                                    uintptr_t len,
                                    bool with_stats,
                                    char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSCHUR_H */
