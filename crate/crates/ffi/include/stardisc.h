#ifndef STARDISC_H
#define STARDISC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Quality of a selection's value.
 */
typedef enum StardiscSelectionStatus {
  STARDISC_SELECTION_STATUS_OPTIMAL = 0,
  STARDISC_SELECTION_STATUS_BEST_FOUND = 1,
  STARDISC_SELECTION_STATUS_HEURISTIC = 2,
} StardiscSelectionStatus;

/**
 * Subset solvers.
 */
typedef enum StardiscSolver {
  STARDISC_SOLVER_BRANCH_AND_BOUND = 0,
  STARDISC_SOLVER_GREEDY = 1,
  STARDISC_SOLVER_RANDOM = 2,
  STARDISC_SOLVER_BRUTE_FORCE = 3,
} StardiscSolver;

/**
 * Result code of every fallible call.
 */
typedef enum StardiscStatus {
  STARDISC_STATUS_OK = 0,
  STARDISC_STATUS_NULL_POINTER = 1,
  STARDISC_STATUS_INVALID_ARGUMENT = 2,
  STARDISC_STATUS_INVALID_INPUT = 3,
  STARDISC_STATUS_CAP_EXCEEDED = 4,
  STARDISC_STATUS_IO = 5,
  STARDISC_STATUS_PANIC = 6,
} StardiscStatus;

/**
 * Opaque point set.
 */
typedef struct StardiscPointSet StardiscPointSet;

/**
 * Opaque solver result.
 */
typedef struct StardiscSelection StardiscSelection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *stardisc_last_error(void);

/**
 * Builds a point set from `n * dim` row-major coordinates in `[0, 1]`.
 *
 * # Safety
 * `coords` must point to `n * dim` readable doubles (or be null when
 * `n == 0`); `out` must be writable.
 */
enum StardiscStatus stardisc_pointset_new(uintptr_t dim,
                                          const double *coords,
                                          uintptr_t n,
                                          struct StardiscPointSet **out);

/**
 * Generates a point set. `kind` is one of `sobol`, `halton`, `revhalton`,
 * `faure`, `fibonacci`, `uniform`, `ilhs`; `seed` is used only by the
 * random kinds.
 *
 * # Safety
 * `kind` must be a NUL-terminated string; `out` must be writable.
 */
enum StardiscStatus stardisc_pointset_generate(const char *kind,
                                               uintptr_t dim,
                                               uintptr_t n,
                                               uint64_t seed,
                                               struct StardiscPointSet **out);

/**
 * Reads a point-set file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum StardiscStatus stardisc_pointset_read(const char *path, struct StardiscPointSet **out);

/**
 * Releases a point set; null is ignored.
 *
 * # Safety
 * `set` must come from this library and not be used afterwards.
 */
void stardisc_pointset_free(struct StardiscPointSet *set);

/**
 * Number of points; 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
uintptr_t stardisc_pointset_len(const struct StardiscPointSet *set);

/**
 * Dimension; 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
uintptr_t stardisc_pointset_dim(const struct StardiscPointSet *set);

/**
 * Copies the `n * dim` row-major coordinates into `out`, which holds
 * `capacity` doubles.
 *
 * # Safety
 * `set` must be a live handle; `out` must hold `capacity` writable doubles.
 */
enum StardiscStatus stardisc_pointset_coords(const struct StardiscPointSet *set,
                                             double *out,
                                             uintptr_t capacity);

/**
 * Exact star discrepancy. `witness` (nullable) receives `dim` doubles;
 * `closed_witness` (nullable) is set to 1 when the maximum is attained by
 * a closed box.
 *
 * # Safety
 * `set` must be a live handle; `value` must be writable; `witness`, when
 * not null, must hold `dim` doubles.
 */
enum StardiscStatus stardisc_discrepancy(const struct StardiscPointSet *set,
                                         double *value,
                                         double *witness,
                                         int32_t *closed_witness);

/**
 * Selects `m` points. `time_limit_ms` bounds the branch-and-bound (0 for
 * none) and, for the random solver, is the budget when `evaluations` is 0.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum StardiscStatus stardisc_subset(const struct StardiscPointSet *set,
                                    uintptr_t m,
                                    enum StardiscSolver solver,
                                    uint64_t time_limit_ms,
                                    uint64_t evaluations,
                                    uint64_t seed,
                                    struct StardiscSelection **out);

/**
 * Releases a selection; null is ignored.
 *
 * # Safety
 * `sel` must come from this library and not be used afterwards.
 */
void stardisc_selection_free(struct StardiscSelection *sel);

/**
 * Star discrepancy of the selected subset; NaN for null.
 *
 * # Safety
 * `sel` must be null or a live handle.
 */
double stardisc_selection_value(const struct StardiscSelection *sel);

/**
 * # Safety
 * `sel` must be a live handle.
 */
enum StardiscSelectionStatus stardisc_selection_status(const struct StardiscSelection *sel);

/**
 * Number of selected points; 0 for null.
 *
 * # Safety
 * `sel` must be null or a live handle.
 */
uintptr_t stardisc_selection_len(const struct StardiscSelection *sel);

/**
 * Search nodes visited; 0 for null.
 *
 * # Safety
 * `sel` must be null or a live handle.
 */
uint64_t stardisc_selection_nodes(const struct StardiscSelection *sel);

/**
 * Copies the sorted zero-based indices into `out`, which holds `capacity`
 * entries.
 *
 * # Safety
 * `sel` must be a live handle; `out` must hold `capacity` writable entries.
 */
enum StardiscStatus stardisc_selection_indices(const struct StardiscSelection *sel,
                                               uintptr_t *out,
                                               uintptr_t capacity);

/**
 * Writes the subset-selection MILP for `m` points as an LP file.
 *
 * # Safety
 * `set` must be a live handle; `path` a NUL-terminated string.
 */
enum StardiscStatus stardisc_lp_export(const struct StardiscPointSet *set,
                                       uintptr_t m,
                                       const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARDISC_H */
