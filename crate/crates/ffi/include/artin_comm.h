#ifndef ARTIN_COMM_H
#define ARTIN_COMM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ArtinStatus {
  ARTIN_STATUS_OK = 0,
  ARTIN_STATUS_NULL_POINTER = 1,
  ARTIN_STATUS_INVALID_UTF8 = 2,
  ARTIN_STATUS_PARSE = 3,
  ARTIN_STATUS_INVALID_PARAMETER = 4,
  ARTIN_STATUS_NOT_SPHERICAL = 5,
  ARTIN_STATUS_BOUND_EXCEEDED = 6,
  ARTIN_STATUS_RESOURCE_BOUND = 7,
  ARTIN_STATUS_CORRUPT_CACHE = 8,
  ARTIN_STATUS_IO = 9,
  ARTIN_STATUS_INTERNAL = 10,
} ArtinStatus;

/**
 * Opaque verification report.
 */
typedef struct ArtinReport ArtinReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *artin_last_error(void);

/**
 * Library version as a static string.
 */
const char *artin_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void artin_string_free(char *s);

/**
 * |W| of a catalog type such as `"F4"` or `"I2(7)"`.
 *
 * # Safety
 * `ty` must be a NUL-terminated string and `out` writable.
 */
enum ArtinStatus artin_catalog_order(const char *ty, uint64_t *out);

/**
 * Commensurability verdict for two graph specs as a JSON string.
 *
 * # Safety
 * `left` and `right` must be NUL-terminated; `out` writable. The result is
 * freed with [`artin_string_free`].
 */
enum ArtinStatus artin_classify(const char *left, const char *right, char **out);

/**
 * Whether two words are equal in A[Γ] for a graph spec such as `"F4"`.
 * `DELTA` in a word stands for the Garside element of the whole graph.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` writable.
 */
enum ArtinStatus artin_words_equal(const char *graph, const char *w1, const char *w2, bool *out);

/**
 * Counts homomorphisms A[Γ] → S_degree (optionally through the central
 * quotient, optionally non-cyclic only) and their conjugacy classes.
 *
 * # Safety
 * `ty` must be NUL-terminated; `total` and `classes` writable.
 */
enum ArtinStatus artin_count_homs(const char *ty,
                                  uintptr_t degree,
                                  bool mod_center,
                                  bool non_cyclic,
                                  uint64_t *total,
                                  uint64_t *classes);

/**
 * Runs a lemma driver such as `"d4"` or `"dn(6)"`. With `reproducible`
 * the runtime and cache fields are zeroed.
 *
 * # Safety
 * `lemma` must be NUL-terminated; `out` writable. The report is released
 * with [`artin_report_free`].
 */
enum ArtinStatus artin_verify(const char *lemma, bool reproducible, struct ArtinReport **out);

/**
 * # Safety
 * `report` must be NULL or a live handle from [`artin_verify`].
 */
bool artin_report_passed(const struct ArtinReport *report);

/**
 * Number of checks in the report, 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
uintptr_t artin_report_check_count(const struct ArtinReport *report);

/**
 * The report as JSON, or NULL for a NULL handle.
 *
 * # Safety
 * `report` must be NULL or a live handle. Free the result with
 * [`artin_string_free`].
 */
char *artin_report_json(const struct ArtinReport *report);

/**
 * # Safety
 * `report` must be NULL or a handle from [`artin_verify`] not yet freed.
 */
void artin_report_free(struct ArtinReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARTIN_COMM_H */
