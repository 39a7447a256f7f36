#ifndef KLMFA_H
#define KLMFA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum KlmStatus {
  KLM_STATUS_OK = 0,
  KLM_STATUS_NULL_POINTER = 1,
  KLM_STATUS_INVALID_UTF8 = 2,
  KLM_STATUS_INVALID_JSON = 3,
  KLM_STATUS_INVALID_DOCUMENT = 4,
  KLM_STATUS_INVALID_TASK = 5,
  KLM_STATUS_MODEL_ERROR = 6,
  KLM_STATUS_METRICS_ERROR = 7,
  KLM_STATUS_PANIC = 99,
} KlmStatus;

/**
 * Parsed form document with geometry.
 */
typedef struct KlmDocument KlmDocument;

/**
 * Output of a modeling run.
 */
typedef struct KlmResult KlmResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses HTML and estimates layout. `layout_json` may be null for defaults.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out`
 * must be a valid pointer.
 */
enum KlmStatus klm_document_parse_html(const char *html,
                                       const char *source,
                                       const char *layout_json,
                                       struct KlmDocument **out_doc);

/**
 * Loads a form document from JSON, estimating layout if geometry is missing.
 *
 * # Safety
 * See [`klm_document_parse_html`].
 */
enum KlmStatus klm_document_from_json(const char *json_text, struct KlmDocument **out_doc);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `doc` must be null or a live handle.
 */
size_t klm_document_element_count(const struct KlmDocument *doc);

/**
 * Replaces geometry of the named elements with a JSON `{id: geometry}` map.
 *
 * # Safety
 * `doc` must be a live handle; `overrides_json` a valid string.
 */
enum KlmStatus klm_document_apply_overrides(struct KlmDocument *doc, const char *overrides_json);

/**
 * Serializes the document; free the string with [`klm_string_free`].
 *
 * # Safety
 * `doc` must be a live handle; `out_json` a valid pointer.
 */
enum KlmStatus klm_document_to_json(const struct KlmDocument *doc, char **out_json);

/**
 * # Safety
 * `doc` must be null or a handle not yet freed.
 */
void klm_document_free(struct KlmDocument *doc);

/**
 * Models a task. `settings_json` may be null for default settings.
 *
 * # Safety
 * `doc` must be a live handle; strings valid or null where allowed.
 */
enum KlmStatus klm_model(const struct KlmDocument *doc,
                         const char *task_json,
                         const char *settings_json,
                         struct KlmResult **out_result);

/**
 * Total time in integer microseconds, or 0 for a null handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t klm_result_total_us(const struct KlmResult *result);

/**
 * # Safety
 * `result` must be null or a live handle.
 */
double klm_result_total_seconds(const struct KlmResult *result);

/**
 * Number of operators in the trace.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t klm_result_operator_count(const struct KlmResult *result);

/**
 * Serializes the full result; free the string with [`klm_string_free`].
 *
 * # Safety
 * `result` must be a live handle; `out_json` a valid pointer.
 */
enum KlmStatus klm_result_to_json(const struct KlmResult *result, char **out_json);

/**
 * # Safety
 * `result` must be null or a handle not yet freed.
 */
void klm_result_free(struct KlmResult *result);

/**
 * Fitts movement time in seconds.
 *
 * # Safety
 * `out_seconds` must be a valid pointer.
 */
enum KlmStatus klm_fitts_movement_time(double distance,
                                       double width,
                                       double a,
                                       double b,
                                       double *out_seconds);

/**
 * SUS score of one respondent's ten responses.
 *
 * # Safety
 * `responses` must point to `len` bytes; `out_score` must be valid.
 */
enum KlmStatus klm_sus_score(const uint8_t *responses, size_t len, double *out_score);

/**
 * Cronbach's alpha of a row-major `respondents x items` matrix.
 *
 * # Safety
 * `values` must point to `respondents * items` integers.
 */
enum KlmStatus klm_cronbach_alpha(const int64_t *values,
                                  size_t respondents,
                                  size_t items,
                                  int64_t scale_min,
                                  int64_t scale_max,
                                  double *out_alpha);

/**
 * Normalized gain in percent.
 *
 * # Safety
 * `out_percent` must be a valid pointer.
 */
enum KlmStatus klm_normalized_gain(double pre, double post, double max, double *out_percent);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call on the same thread; do not free it.
 */
const char *klm_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void klm_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *klm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLMFA_H */
