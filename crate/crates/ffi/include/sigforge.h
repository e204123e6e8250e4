#ifndef SIGFORGE_H
#define SIGFORGE_H

/* Generated by cbindgen from the sigforge-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of a call: `OK` on success, `DIAGNOSTIC` for well-formed input
 * failures (see `sf_last_error`), `USAGE` for misuse of the interface,
 * and `PANIC` for internal errors.
 */
typedef enum {
  SF_STATUS_OK = 0,
  SF_STATUS_DIAGNOSTIC = 1,
  SF_STATUS_USAGE = 2,
  SF_STATUS_PANIC = 3,
} SfStatus;

/**
 * Output dialect of emitted interpretations.
 */
typedef enum {
  SF_STYLE_AGDA = 0,
  SF_STYLE_ASCII = 1,
} SfStyle;

/**
 * An elaborated signature; create with `sf_compile`, release with
 * `sf_free`.
 */
typedef struct SfCompiled SfCompiled;

/**
 * The message of the most recent failure on this thread. The pointer is
 * valid until the next sigforge call on the same thread.
 */
const char *sf_last_error(void);

/**
 * Parses and elaborates a signature source buffer. On success stores a
 * handle in `out_handle`; the caller owns it and must release it with
 * `sf_free`.
 *
 * # Safety
 * `source` and `file_name` must be valid nul-terminated strings and
 * `out_handle` a valid pointer.
 */
SfStatus sf_compile(const char *source, const char *file_name, SfCompiled **out_handle);

/**
 * Releases a handle returned by `sf_compile`. A null handle is ignored.
 *
 * # Safety
 * `handle` must come from `sf_compile` and must not be used afterwards.
 */
void sf_free(SfCompiled *handle);

/**
 * Releases a string returned by this interface.
 *
 * # Safety
 * `s` must come from a sigforge call and must not be used afterwards.
 */
void sf_string_free(char *s);

/**
 * Number of entries of the elaborated signature.
 *
 * # Safety
 * `handle` must be a live handle from `sf_compile`.
 */
uintptr_t sf_entry_count(const SfCompiled *handle);

/**
 * The profile token of the signature (`simple`, `fqii`, `hiit-strict`,
 * `hiit-weak`); a static string, do not free.
 *
 * # Safety
 * `handle` must be a live handle from `sf_compile`.
 */
const char *sf_profile(const SfCompiled *handle);

/**
 * Emits the interpretations named by `what` (a comma list of
 * `a,m,d,s,ind,rec`) in the given style. On success `out_text` receives
 * an owned string; free it with `sf_string_free`.
 *
 * # Safety
 * `handle` must be live, `what` a valid string, `out_text` a valid
 * pointer.
 */
SfStatus sf_emit(const SfCompiled *handle, const char *what, SfStyle style, char **out_text);

/**
 * Evaluates a closed simple-profile term. Exactly one of `algebra_json`
 * and `dalgebra_json` must be non-null; the result lands in `out_value`.
 *
 * # Safety
 * `handle` must be live; string arguments, when non-null, must be valid;
 * `out_value` must be a valid pointer.
 */
SfStatus sf_eval(const SfCompiled *handle,
                 const char *algebra_json,
                 const char *dalgebra_json,
                 const char *term,
                 int64_t *out_value);

/**
 * Enumerates the term algebra to the given depth as a newline-separated
 * owned string; free it with `sf_string_free`.
 *
 * # Safety
 * `handle` must be live and `out_text` a valid pointer.
 */
SfStatus sf_enumerate(const SfCompiled *handle, uintptr_t max_depth, char **out_text);

#endif /* SIGFORGE_H */
