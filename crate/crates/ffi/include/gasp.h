#ifndef GASP_H
#define GASP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GaspAlgorithm {
  GASP_ALGORITHM_AUTO = 0,
  GASP_ALGORITHM_ORACLE = 1,
  GASP_ALGORITHM_TREE = 2,
  GASP_ALGORITHM_FLOW = 3,
  GASP_ALGORITHM_CORE_ENUM = 4,
  GASP_ALGORITHM_CORE_SINGLE = 5,
  GASP_ALGORITHM_IS_COPYABLE = 6,
} GaspAlgorithm;

typedef enum GaspConcept {
  GASP_CONCEPT_NASH = 0,
  GASP_CONCEPT_INDIVIDUAL = 1,
  GASP_CONCEPT_CORE = 2,
} GaspConcept;

/**
 * Result of a fallible call.
 */
typedef enum GaspStatus {
  GASP_STATUS_OK = 0,
  /**
   * The solver proved that no stable assignment exists.
   */
  GASP_STATUS_NOT_FOUND = 1,
  GASP_STATUS_INVALID_INPUT = 2,
  GASP_STATUS_UNSUPPORTED = 3,
  GASP_STATUS_BUDGET_EXCEEDED = 4,
  GASP_STATUS_NULL_ARGUMENT = 5,
  GASP_STATUS_PANIC = 6,
} GaspStatus;

/**
 * Opaque assignment of players to activities.
 */
typedef struct GaspAssignment GaspAssignment;

/**
 * Opaque validated instance.
 */
typedef struct GaspInstance GaspInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call on this thread; do not free.
 */
const char *gasp_last_error(void);

/**
 * Parses and validates an instance file's JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GaspStatus gasp_instance_from_json(const char *json, struct GaspInstance **out);

/**
 * # Safety
 * `inst` must come from [`gasp_instance_from_json`] and not be freed twice.
 */
void gasp_instance_free(struct GaspInstance *inst);

/**
 * Number of players, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t gasp_instance_players(const struct GaspInstance *inst);

/**
 * Number of non-void activities, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t gasp_instance_activities(const struct GaspInstance *inst);

/**
 * The instance in file format; free with [`gasp_string_free`].
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
char *gasp_instance_to_json(const struct GaspInstance *inst);

/**
 * Finds a stable assignment. On [`GaspStatus::Ok`] `*out` holds a new
 * assignment; on [`GaspStatus::NotFound`] none exists and `*out` is null.
 * `budget` 0 means the algorithm's default; `jobs` 0 or 1 is sequential.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum GaspStatus gasp_solve(const struct GaspInstance *inst,
                           enum GaspConcept concept_,
                           enum GaspAlgorithm algo,
                           uint64_t budget,
                           size_t jobs,
                           struct GaspAssignment **out);

/**
 * Parses an assignment file's JSON text against `inst`.
 *
 * # Safety
 * `inst` must be a live handle, `json` NUL-terminated, `out` valid.
 */
enum GaspStatus gasp_assignment_from_json(const struct GaspInstance *inst,
                                          const char *json,
                                          struct GaspAssignment **out);

/**
 * # Safety
 * `pi` must come from this library and not be freed twice.
 */
void gasp_assignment_free(struct GaspAssignment *pi);

/**
 * Activity code of `player` (0 = void), or `SIZE_MAX` when out of range.
 *
 * # Safety
 * `pi` must be null or a live handle.
 */
size_t gasp_assignment_activity(const struct GaspAssignment *pi, size_t player);

/**
 * The assignment in file format; free with [`gasp_string_free`].
 *
 * # Safety
 * Both handles must be null or live, and `pi` must belong to `inst`.
 */
char *gasp_assignment_to_json(const struct GaspInstance *inst, const struct GaspAssignment *pi);

/**
 * Checks `pi`. Sets `*stable` to 1 or 0; when unstable and `witness` is
 * non-null, stores a one-line witness to free with [`gasp_string_free`].
 *
 * # Safety
 * Handles must be live; `stable` valid; `witness` null or valid.
 */
enum GaspStatus gasp_verify(const struct GaspInstance *inst,
                            const struct GaspAssignment *pi,
                            enum GaspConcept concept_,
                            int32_t *stable,
                            char **witness);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void gasp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GASP_H */
