#ifndef G2DBL_H
#define G2DBL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum G2dblStatus {
  /**
   * Success; for runs, every check with a verdict passed.
   */
  G2DBL_STATUS_OK = 0,
  /**
   * A check failed.
   */
  G2DBL_STATUS_FAIL = 1,
  /**
   * Unknown check id, bad manifest or bad argument.
   */
  G2DBL_STATUS_USAGE = 2,
  /**
   * Arithmetic or internal error inside a check.
   */
  G2DBL_STATUS_INTERNAL = 3,
  G2DBL_STATUS_NULL_POINTER = 4,
  G2DBL_STATUS_INVALID_UTF8 = 5,
  G2DBL_STATUS_PANIC = 6,
} G2dblStatus;

/**
 * Reports of one run.
 */
typedef struct G2dblReports G2dblReports;

/**
 * The Weyl group of E8.
 */
typedef struct G2dblWeylGroup G2dblWeylGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Runs a JSON manifest `[{"id": ..., "params": {...}}]`. On `Ok` or `Fail`
 * `*out` receives a handle to free with [`g2dbl_reports_free`].
 * `jobs = 0` uses one worker per core.
 *
 * # Safety
 * `manifest` must be a NUL-terminated string and `out` a valid pointer.
 */
enum G2dblStatus g2dbl_run_manifest(const char *manifest,
                                    uint32_t degree,
                                    uint32_t jobs,
                                    struct G2dblReports **out);

/**
 * Runs one check with default parameters.
 *
 * # Safety
 * As for [`g2dbl_run_manifest`].
 */
enum G2dblStatus g2dbl_run_check(const char *id, uint32_t degree, struct G2dblReports **out);

/**
 * Number of reports; 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
size_t g2dbl_reports_len(const struct G2dblReports *r);

/**
 * 0 pass, 1 fail, 2 report-only; -1 if out of range.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
int32_t g2dbl_reports_status(const struct G2dblReports *r, size_t i);

/**
 * The reports as a JSON array; null on a null handle.
 *
 * # Safety
 * `r` must be null or a live handle. Free the result with [`g2dbl_string_free`].
 */
char *g2dbl_reports_json(const struct G2dblReports *r);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void g2dbl_reports_free(struct G2dblReports *r);

/**
 * Number of registered checks.
 */
size_t g2dbl_check_count(void);

/**
 * Id of the `i`-th registered check, or null. Free with [`g2dbl_string_free`].
 */
char *g2dbl_check_id(size_t i);

struct G2dblWeylGroup *g2dbl_weyl_e8_new(void);

/**
 * Length of the element given by a word in the simple reflections, e.g.
 * `"345678243546576"`.
 *
 * # Safety
 * `g` must be a live handle, `word` a NUL-terminated string, `out` valid.
 */
enum G2dblStatus g2dbl_weyl_length(const struct G2dblWeylGroup *g, const char *word, size_t *out);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void g2dbl_weyl_free(struct G2dblWeylGroup *g);

/**
 * Copy of this thread's last error message, or null if the last call
 * succeeded. Free with [`g2dbl_string_free`].
 */
char *g2dbl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void g2dbl_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* G2DBL_H */
