#ifndef TMOD_LVALUES_H
#define TMOD_LVALUES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define TL_OK 0

/**
 * The command ran and the identity it checks does not hold; the value is still produced.
 */
#define TL_IDENTITY_FAIL 1

#define TL_CONFIG_ERROR 2

#define TL_NULL_POINTER 3

#define TL_INVALID_UTF8 4

#define TL_COMPUTE_ERROR 5

#define TL_PANIC 6

#define TL_FORMAT_TEXT 0

#define TL_FORMAT_JSONL 1

/**
 * A validated run configuration.
 */
typedef struct TlConfig TlConfig;

/**
 * The report of one command.
 */
typedef struct TlValue TlValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a configuration text into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
int32_t tl_config_parse(const char *text, TlConfig **out);

/**
 * The default configuration: Carlitz over F_2, trivial extension, N = 4.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int32_t tl_config_default(TlConfig **out);

/**
 * Sets the precision N.
 *
 * # Safety
 * `cfg` must be a handle from this library or null.
 */
int32_t tl_config_set_precision(TlConfig *cfg, uint32_t n);

/**
 * The canonical text form of a configuration.
 *
 * # Safety
 * `cfg` must be a handle from this library; `out` a valid pointer.
 */
int32_t tl_config_serialize(const TlConfig *cfg, char **out);

/**
 * # Safety
 * `cfg` must be a handle from this library or null; it is invalid afterwards.
 */
void tl_config_free(TlConfig *cfg);

/**
 * Runs a command (e.g. "theta0", "etnf-check"). On TL_OK and TL_IDENTITY_FAIL `*out` holds the report.
 *
 * # Safety
 * `cfg` must be a handle from this library, `command` NUL-terminated, `out` valid.
 */
int32_t tl_run(const TlConfig *cfg,
               const char *command,
               TlValue **out);

/**
 * The primary value of a report (e.g. the Laurent series for theta0), or the empty string.
 *
 * # Safety
 * `v` must be a handle from this library; `out` a valid pointer.
 */
int32_t tl_value_primary(const TlValue *v, char **out);

/**
 * The full report rendered as TL_FORMAT_TEXT or TL_FORMAT_JSONL.
 *
 * # Safety
 * `v` must be a handle from this library; `out` a valid pointer.
 */
int32_t tl_value_render(const TlValue *v, int32_t format, char **out);

/**
 * # Safety
 * `v` must be a handle from this library or null; it is invalid afterwards.
 */
void tl_value_free(TlValue *v);

/**
 * # Safety
 * `s` must be a string returned by this library or null.
 */
void tl_string_free(char *s);

/**
 * The message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *tl_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TMOD_LVALUES_H */
