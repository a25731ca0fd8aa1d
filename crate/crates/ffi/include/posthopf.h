#ifndef POSTHOPF_H
#define POSTHOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PhStatus {
  PH_STATUS_OK = 0,
  PH_STATUS_NULL_POINTER = 1,
  PH_STATUS_INVALID_UTF8 = 2,
  PH_STATUS_INVALID_ARGUMENT = 3,
  PH_STATUS_PARSE_ERROR = 4,
  PH_STATUS_COMPUTE_ERROR = 5,
  PH_STATUS_PANIC = 6,
} PhStatus;

typedef enum PhMode {
  PH_MODE_RELAXED = 0,
  PH_MODE_WEAK = 1,
} PhMode;

typedef enum PhParameterization {
  PH_PARAMETERIZATION_GENERATOR32 = 0,
  PH_PARAMETERIZATION_FULL64 = 1,
} PhParameterization;

/**
 * A Hopf algebra given by structure constants.
 */
typedef struct PhHopf PhHopf;

/**
 * An operation table.
 */
typedef struct PhOp PhOp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *ph_last_error(void);

/**
 * Library version as a static string.
 */
const char *ph_version(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ph_string_free(char *s);

/**
 * The Sweedler four-dimensional Hopf algebra.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PhStatus ph_hopf_sweedler(struct PhHopf **out);

/**
 * Parse a Hopf structure from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PhStatus ph_hopf_from_json(const char *json, struct PhHopf **out);

/**
 * Canonical JSON of a Hopf structure.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum PhStatus ph_hopf_to_json(const struct PhHopf *h, char **out);

/**
 * # Safety
 * `h` must come from this library and not have been freed. Null is ignored.
 */
void ph_hopf_free(struct PhHopf *h);

/**
 * Check every Hopf algebra axiom; `passed` receives the verdict.
 *
 * # Safety
 * `h` must be a live handle and `passed` a valid pointer.
 */
enum PhStatus ph_hopf_verify(const struct PhHopf *h, bool *passed);

/**
 * One of the six Sweedler tables, `id` being `"i"` to `"vi"`. `param` is a
 * rational such as `"-3/2"`, or null to keep the parameter symbolic.
 *
 * # Safety
 * `id` must be a NUL-terminated string, `param` one or null, `out` valid.
 */
enum PhStatus ph_op_family(const char *id, const char *param, struct PhOp **out);

/**
 * Parse an operation from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PhStatus ph_op_from_json(const char *json, struct PhOp **out);

/**
 * JSON of an operation.
 *
 * # Safety
 * `op` must be a live handle and `out` a valid pointer.
 */
enum PhStatus ph_op_to_json(const struct PhOp *op, char **out);

/**
 * # Safety
 * `op` must come from this library and not have been freed. Null is ignored.
 */
void ph_op_free(struct PhOp *op);

/**
 * Check `op` against the `mode` axioms on `h`.
 *
 * # Safety
 * `h` and `op` must be live handles and `passed` a valid pointer.
 */
enum PhStatus ph_op_verify(const struct PhHopf *h,
                           const struct PhOp *op,
                           enum PhMode mode,
                           bool *passed);

/**
 * Classify operations on the Sweedler algebra; `out` receives the JSON report.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PhStatus ph_classify_json(enum PhMode mode,
                               enum PhParameterization parameterization,
                               char **out);

/**
 * Enumerate operations on the Sweedler algebra over `F_prime`; `out`
 * receives the JSON report.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PhStatus ph_enumerate_json(uint64_t prime, enum PhMode mode, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSTHOPF_H */
