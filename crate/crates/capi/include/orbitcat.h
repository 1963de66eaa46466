/* C interface for the orbitcat analysis library. */

#ifndef ORBITCAT_H
#define ORBITCAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by all fallible entry points.
 */
typedef enum OrbStatus {
  /**
   * success
   */
  OrbOk = 0,
  /**
   * a check suite ran and found failures
   */
  OrbCheckFailed = 1,
  /**
   * the input could not be read or parsed
   */
  OrbParseError = 2,
  /**
   * the input parsed but violates a structural requirement
   */
  OrbInvalid = 3,
  /**
   * an element or generator index is out of range
   */
  OrbUnknownElement = 4,
  /**
   * a null pointer or non-UTF-8 string was passed in
   */
  OrbBadArgument = 5,
} OrbStatus;

/**
 * A completed analysis of one scenario: the regularized action, its
 * database category and the quotient stratification.
 */
typedef struct OrbAnalysis OrbAnalysis;

/**
 * An owned scenario, as parsed or generated.
 */
typedef struct OrbScenario OrbScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the most recent failure on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *orb_last_error(void);

/**
 * Parses a scenario from JSON. Returns null on failure.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct OrbScenario *orb_scenario_from_json(const char *json);

/**
 * Builds a built-in scenario from a reference such as
 * `rotation_sphere(5)`. Returns null on failure.
 *
 * # Safety
 * `reference` must be a valid NUL-terminated string.
 */
struct OrbScenario *orb_scenario_example(const char *reference);

/**
 * The scenario as canonical JSON; release with `orb_string_free`.
 *
 * # Safety
 * `scenario` must be a live handle from this library or null.
 */
char *orb_scenario_to_json(const struct OrbScenario *scenario);

/**
 * # Safety
 * `scenario` must be a handle from this library, not yet freed, or null.
 */
void orb_scenario_free(struct OrbScenario *scenario);

/**
 * Runs the full analysis: regularization, the database category and the
 * quotient stratification. Returns null on failure.
 *
 * # Safety
 * `scenario` must be a live handle from this library or null.
 */
struct OrbAnalysis *orb_analysis_new(const struct OrbScenario *scenario);

/**
 * # Safety
 * `analysis` must be a handle from this library, not yet freed, or null.
 */
void orb_analysis_free(struct OrbAnalysis *analysis);

/**
 * 1 if the quotient stratification satisfies the frontier condition,
 * 0 if not, -1 on a null handle.
 *
 * # Safety
 * `analysis` must be a live handle from this library or null.
 */
int32_t orb_analysis_frontier_ok(const struct OrbAnalysis *analysis);

/**
 * The quotient stratum poset as JSON; release with `orb_string_free`.
 *
 * # Safety
 * `analysis` must be a live handle from this library or null.
 */
char *orb_analysis_poset_json(const struct OrbAnalysis *analysis);

/**
 * Runs the invariant check suite. On OrbOk or OrbCheckFailed, and when
 * `out_report` is non-null, stores the JSON report there; release it with
 * `orb_string_free`.
 *
 * # Safety
 * `scenario` must be a live handle from this library or null; `out_report`
 * must be null or point to writable memory for one pointer.
 */
enum OrbStatus orb_check(const struct OrbScenario *scenario, char **out_report);

/**
 * # Safety
 * `text` must come from this library and not have been freed already.
 */
void orb_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITCAT_H */
