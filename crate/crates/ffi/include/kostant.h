#ifndef KOSTANT_H
#define KOSTANT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KostantStatus {
  KOSTANT_STATUS_OK = 0,
  KOSTANT_STATUS_NULL_ARGUMENT = 1,
  KOSTANT_STATUS_INVALID_UTF8 = 2,
  KOSTANT_STATUS_PARSE = 3,
  KOSTANT_STATUS_INVALID_INPUT = 4,
  KOSTANT_STATUS_CAP_EXCEEDED = 5,
  KOSTANT_STATUS_UNSUPPORTED = 6,
  KOSTANT_STATUS_INTERNAL = 7,
  KOSTANT_STATUS_PANIC = 8,
} KostantStatus;

typedef enum KostantVerdict {
  KOSTANT_VERDICT_PARABOLIC_EXISTS = 0,
  KOSTANT_VERDICT_NO_PARABOLIC_CONE_CERTIFICATE = 1,
  KOSTANT_VERDICT_NO_PARABOLIC_CYCLE = 2,
  KOSTANT_VERDICT_INCONCLUSIVE_AT_DEGREE_D = 3,
} KostantVerdict;

/**
 * Opaque report handle.
 */
typedef struct KostantReport KostantReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Decides whether `s` lies in a parabolic with the given reductive part.
 *
 * `parts`, `i0` and `signs` use the command-line syntax and may be null. `rank` is ignored
 * for G2. A negative `max_degree` selects the default bound.
 *
 * # Safety
 * String arguments must be null or nul-terminated; `out` must be writable.
 */
enum KostantStatus kostant_check(const char *lie_type,
                                 size_t rank,
                                 const char *parts,
                                 const char *i0,
                                 const char *signs,
                                 const char *s,
                                 int max_degree,
                                 struct KostantReport **out);

/**
 * One of the fixed examples: B, C, D-nonsat, G2-sat, G2-nonsat, F4, E6, E7, E8.
 *
 * # Safety
 * `id` must be nul-terminated; `out` must be writable.
 */
enum KostantStatus kostant_paper(const char *id, struct KostantReport **out);

/**
 * The t-roots of a classical datum as JSON; free the string with `kostant_string_free`.
 *
 * # Safety
 * String arguments must be null or nul-terminated; `out` must be writable.
 */
enum KostantStatus kostant_troots_json(const char *lie_type,
                                       size_t rank,
                                       const char *parts,
                                       const char *i0,
                                       const char *signs,
                                       char **out);

/**
 * # Safety
 * `report` must be a live handle.
 */
enum KostantVerdict kostant_report_verdict(const struct KostantReport *report);

/**
 * Exit code the command-line tool would use for this report.
 *
 * # Safety
 * `report` must be a live handle.
 */
int kostant_report_exit_code(const struct KostantReport *report);

/**
 * The report as JSON. The string belongs to the handle and dies with it.
 *
 * # Safety
 * `report` must be a live handle.
 */
const char *kostant_report_json(const struct KostantReport *report);

/**
 * First degree with a nonzero invariant, or -1 if there is none up to the bound.
 *
 * # Safety
 * `report` must be a live handle.
 */
int kostant_report_first_invariant_degree(const struct KostantReport *report);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void kostant_report_free(struct KostantReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void kostant_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *kostant_last_error(void);

/**
 * Library version, static.
 */
const char *kostant_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOSTANT_H */
