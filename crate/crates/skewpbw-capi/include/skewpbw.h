#ifndef SKEWPBW_H
#define SKEWPBW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The check passed (or the call succeeded).
 */
#define SPBW_OK 0

/**
 * The check found a definite counterexample; reports carry the witness.
 */
#define SPBW_FAIL 1

/**
 * The bounded search could not decide either way.
 */
#define SPBW_INCONCLUSIVE 2

/**
 * A pointer argument was null or not valid UTF-8.
 */
#define SPBW_ERR_INVALID_ARG -1

/**
 * The input text or a parameter could not be parsed.
 */
#define SPBW_ERR_PARSE -2

/**
 * The operation does not apply to this input (wrong kind, not quadratic).
 */
#define SPBW_ERR_UNSUPPORTED -3

/**
 * An internal invariant broke; the handle is still safe to free.
 */
#define SPBW_ERR_PANIC -4

/**
 * Opaque handle to a parsed presentation or extension.
 */
typedef struct SpbwItem SpbwItem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static string; do not free.
 */
const char *spbw_version(void);

/**
 * The most recent error message on this thread; empty when no error has
 * occurred. The pointer is valid until the next failing call; do not
 * free.
 */
const char *spbw_last_error(void);

/**
 * Releases a string produced by this library.
 *
 * # Safety
 * `s` must be null or a string returned through an out-parameter, and
 * must not be used afterwards.
 */
void spbw_string_free(char *s);

/**
 * Parses algebra or extension file text into a handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` a valid pointer.
 */
int spbw_parse(const char *text, struct SpbwItem **out);

/**
 * Builds a catalog entry. `field` is "Q" or "GF<p>" (null means Q);
 * `params` is a comma-separated list like "q=1/3" (null means none).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `field` and `params`
 * must each be null or valid NUL-terminated strings; `out` must be a
 * valid pointer.
 */
int spbw_catalog(const char *name, const char *field, const char *params, struct SpbwItem **out);

/**
 * Releases a handle.
 *
 * # Safety
 * `item` must be null or a handle from this library, not used afterwards.
 */
void spbw_item_free(struct SpbwItem *item);

/**
 * 0 for a presentation, 1 for an extension.
 *
 * # Safety
 * `item` must be null or a live handle.
 */
int spbw_item_kind(const struct SpbwItem *item);

/**
 * Renders the handle back to algebra file text.
 *
 * # Safety
 * `item` must be a live handle; `out` a valid pointer.
 */
int spbw_render(const struct SpbwItem *item, char **out);

/**
 * Writes the Hilbert function h(0)..h(to) as a space-separated string.
 *
 * # Safety
 * `item` must be a live handle; `out` a valid pointer.
 */
int spbw_hilbert(const struct SpbwItem *item, unsigned int to, char **out);

/**
 * Validates the handle. Returns SPBW_OK or SPBW_FAIL and writes the
 * report text either way.
 *
 * # Safety
 * `item` must be a live handle; `report` a valid pointer or null.
 */
int spbw_validate(const struct SpbwItem *item, char **report);

/**
 * PBW test at the given completion bound (3 certifies quadratic
 * systems). SPBW_OK means a PBW basis exists in the declared order;
 * SPBW_FAIL writes the witness dependence.
 *
 * # Safety
 * `item` must be a live handle; `witness` a valid pointer or null.
 */
int spbw_pbw(const struct SpbwItem *item, unsigned int degree, char **witness);

/**
 * Runs the Koszulness probes at default bounds and writes the report.
 *
 * # Safety
 * `item` must be a live handle; `report` a valid pointer or null.
 */
int spbw_koszul(const struct SpbwItem *item, char **report);

/**
 * Builds the quadratic dual as a new handle.
 *
 * # Safety
 * `item` must be a live handle; `out` a valid pointer.
 */
int spbw_dual(const struct SpbwItem *item, struct SpbwItem **out);

/**
 * For an extension handle, the presentation it generates as a new
 * handle. SPBW_ERR_UNSUPPORTED for presentations.
 *
 * # Safety
 * `item` must be a live handle; `out` a valid pointer.
 */
int spbw_extension_presentation(const struct SpbwItem *item, struct SpbwItem **out);

/**
 * For an extension handle, the classification flags as `name=bool`
 * lines. SPBW_ERR_UNSUPPORTED for presentations.
 *
 * # Safety
 * `item` must be a live handle; `flags` a valid pointer or null.
 */
int spbw_classify(const struct SpbwItem *item, unsigned int bound, char **flags);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWPBW_H */
