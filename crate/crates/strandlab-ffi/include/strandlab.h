/* C interface to the strandlab verification library. Generated; do not edit. */

#ifndef STRANDLAB_H
#define STRANDLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code for every fallible entry point.
 */
typedef enum StrandlabStatus {
  STRANDLAB_STATUS_OK = 0,
  /**
   * A parameter or input was malformed.
   */
  STRANDLAB_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Inputs were well formed but violated an operation's precondition.
   */
  STRANDLAB_STATUS_PRECONDITION = 2,
  /**
   * The requested sweep exceeded its work budget.
   */
  STRANDLAB_STATUS_RESOURCE_LIMIT = 3,
  /**
   * A configuration collapsed below the degeneracy tolerance.
   */
  STRANDLAB_STATUS_DEGENERATE_CONFIGURATION = 4,
  /**
   * Rejection sampling gave up.
   */
  STRANDLAB_STATUS_SAMPLING_FAILURE = 5,
  /**
   * A required pointer was null.
   */
  STRANDLAB_STATUS_NULL_POINTER = 6,
  /**
   * An internal panic was caught at the boundary.
   */
  STRANDLAB_STATUS_PANIC = 7,
} StrandlabStatus;

/**
 * A finished suite run: the full report, queryable and serializable.
 */
typedef struct StrandlabReport StrandlabReport;

/**
 * A parsed sphere-valued table.
 */
typedef struct StrandlabSphereMap StrandlabSphereMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; never freed by the caller.
 */
const char *strandlab_version(void);

/**
 * Most recent failure message on this thread, or null if none. The caller
 * frees it with strandlab_string_free.
 */
char *strandlab_last_error(void);

/**
 * Free a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void strandlab_string_free(char *s);

/**
 * Run a verification suite. `suite` is one of the documented suite names;
 * `params_json` is a JSON object of suite parameters (null or empty means
 * all defaults). On Ok, `*out` owns the finished report.
 *
 * # Safety
 * `suite` and (if non-null) `params_json` must be valid NUL-terminated
 * strings; `out` must be a valid pointer.
 */
enum StrandlabStatus strandlab_run_suite(const char *suite,
                                         const char *params_json,
                                         struct StrandlabReport **out);

/**
 * Whether every check in the report passed: 1 yes, 0 no, -1 on null.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
int strandlab_report_passed(const struct StrandlabReport *report);

/**
 * Number of checks in the report, or -1 on null.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
int strandlab_report_check_count(const struct StrandlabReport *report);

/**
 * Serialize the report as pretty-printed JSON. The caller frees the string
 * with strandlab_string_free.
 *
 * # Safety
 * `report` must be a live report handle; `out` must be a valid pointer.
 */
enum StrandlabStatus strandlab_report_json(const struct StrandlabReport *report, char **out);

/**
 * Free a report handle. Null is ignored.
 *
 * # Safety
 * `report` must have been returned by strandlab_run_suite and not freed
 * before.
 */
void strandlab_report_free(struct StrandlabReport *report);

/**
 * Parse a sphere-valued table from JSON of the shape
 * {"k": 4, "n": 3, "table": [ ... k*(k-1)/2 * n floats, pairs in
 * lexicographic order ... ]}. Entries must be unit vectors. On Ok, `*out`
 * owns the parsed table.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer.
 */
enum StrandlabStatus strandlab_sphere_map_parse(const char *json, struct StrandlabSphereMap **out);

/**
 * Arity of a parsed table, or -1 on null.
 *
 * # Safety
 * `map` must be null or a live sphere-map handle.
 */
int strandlab_sphere_map_arity(const struct StrandlabSphereMap *map);

/**
 * Check the two mapping-space conditions on a parsed table. Writes a JSON
 * verdict {"threeDependent": bool, "threeResidual": r, "fourConsistent":
 * bool, "fourResidual": r} to `*verdict_out` (freed with
 * strandlab_string_free). The check itself is deterministic: probe vectors
 * derive from the fixed internal seed.
 *
 * # Safety
 * `map` must be a live sphere-map handle; `verdict_out` must be a valid
 * pointer.
 */
enum StrandlabStatus strandlab_sphere_map_check(const struct StrandlabSphereMap *map,
                                                double tol_three,
                                                double tol_four,
                                                char **verdict_out);

/**
 * Free a sphere-map handle. Null is ignored.
 *
 * # Safety
 * `map` must have been returned by strandlab_sphere_map_parse and not freed
 * before.
 */
void strandlab_sphere_map_free(struct StrandlabSphereMap *map);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRANDLAB_H */
