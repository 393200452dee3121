#ifndef PWT_H
#define PWT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PwtStatus {
  PWT_STATUS_OK = 0,
  PWT_STATUS_NULL_POINTER = 1,
  PWT_STATUS_INVALID_ARGUMENT = 2,
  PWT_STATUS_INVALID_INSTANCE = 3,
  /**
   * The instance lacks a property the operation requires, such as being
   * correlated.
   */
  PWT_STATUS_PRECONDITION = 4,
  PWT_STATUS_IO = 5,
  PWT_STATUS_PARSE = 6,
  PWT_STATUS_PANIC = 7,
} PwtStatus;

/**
 * Values accepted by [`pwt_run`] as `algorithm`.
 */
typedef enum PwtAlgorithm {
  PWT_ALGORITHM_RLS_SWAP = 0,
  PWT_ALGORITHM_ONE_PLUS_ONE_EA = 1,
  PWT_ALGORITHM_GSEMO = 2,
  PWT_ALGORITHM_SEMO = 3,
  PWT_ALGORITHM_SEMO_SWAP = 4,
} PwtAlgorithm;

typedef struct PwtInstance PwtInstance;

typedef struct PwtRunResult PwtRunResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *pwt_last_error(void);

/**
 * Generates a correlated instance, or a uniform-weight one if `uniform` is
 * set, with the default constants.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum PwtStatus pwt_instance_generate(size_t n,
                                     uint64_t seed,
                                     bool uniform,
                                     struct PwtInstance **out);

/**
 * Parses an instance from a NUL-terminated JSON document.
 *
 * # Safety
 * `json` must be NULL or a NUL-terminated string; `out` must be valid for
 * a pointer write.
 */
enum PwtStatus pwt_instance_from_json(const char *json, struct PwtInstance **out);

/**
 * Reads an instance from a JSON file.
 *
 * # Safety
 * `path` must be NULL or a NUL-terminated string; `out` must be valid for
 * a pointer write.
 */
enum PwtStatus pwt_instance_load(const char *path, struct PwtInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library not yet freed.
 */
void pwt_instance_free(struct PwtInstance *inst);

/**
 * Number of items; 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t pwt_instance_n(const struct PwtInstance *inst);

/**
 * Knapsack capacity; 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
uint64_t pwt_instance_capacity(const struct PwtInstance *inst);

/**
 * Evaluates the packing given as `len` bytes, nonzero meaning packed.
 * Any output pointer may be NULL.
 *
 * # Safety
 * `inst` must be a live handle and `bits` must point to `len` readable
 * bytes; outputs must be NULL or valid for writes.
 */
enum PwtStatus pwt_evaluate(const struct PwtInstance *inst,
                            const uint8_t *bits,
                            size_t len,
                            uint64_t *out_weight,
                            double *out_benefit,
                            int64_t *out_violation);

/**
 * Optimum of a correlated instance: the number of leading items packed and
 * the benefit. Outputs may be NULL.
 *
 * # Safety
 * `inst` must be a live handle; outputs must be NULL or valid for writes.
 */
enum PwtStatus pwt_optimal_prefix(const struct PwtInstance *inst,
                                  size_t *out_k,
                                  double *out_benefit);

/**
 * Runs an algorithm (a [`PwtAlgorithm`] value) for at most
 * `max_evaluations` effective evaluations. Setting `init_zero` starts
 * from the empty packing instead of a random one; setting
 * `stop_at_optimum` ends the run at the optimum of a correlated instance.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be valid for a pointer write.
 */
enum PwtStatus pwt_run(const struct PwtInstance *inst,
                       uint32_t algorithm,
                       uint64_t max_evaluations,
                       uint64_t seed,
                       bool init_zero,
                       bool stop_at_optimum,
                       struct PwtRunResult **out);

/**
 * # Safety
 * `result` must be NULL or a handle from [`pwt_run`] not yet freed.
 */
void pwt_result_free(struct PwtRunResult *result);

/**
 * Evaluations spent; 0 for a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
uint64_t pwt_result_evaluations(const struct PwtRunResult *result);

/**
 * Benefit of the best packing; NaN for a NULL handle.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
double pwt_result_best_benefit(const struct PwtRunResult *result);

/**
 * Capacity violation `min(C - W, 0)` of the best packing.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
int64_t pwt_result_best_violation(const struct PwtRunResult *result);

/**
 * Whether the run stopped at its target.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
bool pwt_result_hit_target(const struct PwtRunResult *result);

/**
 * Copies the best packing into `buf` as one byte (0 or 1) per item.
 * `len` must equal the number of items.
 *
 * # Safety
 * `result` must be a live handle and `buf` valid for `len` byte writes.
 */
enum PwtStatus pwt_result_best_bits(const struct PwtRunResult *result, uint8_t *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PWT_H */
