#ifndef GRADED_LIE_H
#define GRADED_LIE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. Zero is success.
 */
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  GL_STATUS_NULL_ARGUMENT = 1,
  GL_STATUS_INVALID_UTF8 = 2,
  GL_STATUS_PARSE = 3,
  GL_STATUS_PARAMETER = 4,
  GL_STATUS_WINDOW = 5,
  GL_STATUS_AUTOMORPHISM = 6,
  GL_STATUS_ALGEBRA = 7,
  GL_STATUS_IO = 8,
  GL_STATUS_PANIC = 9,
} GlStatus;

/**
 * An algebra with its parameters fixed.
 */
typedef struct GlAlgebra GlAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an algebra from a built-in description (`witt`, `wab`, `wgab`).
 * `a` and `b` are rationals such as `"2/3"`; pass NULL for a parameter the
 * algebra does not have.
 *
 * # Safety
 * String arguments must be NULL or valid NUL-terminated strings; `out` must
 * be writable.
 */
enum GlStatus gl_algebra_new(const char *name,
                             const char *a,
                             const char *b,
                             struct GlAlgebra **out);

/**
 * Creates an algebra from description text.
 *
 * # Safety
 * As for [`gl_algebra_new`].
 */
enum GlStatus gl_algebra_from_text(const char *source,
                                   const char *a,
                                   const char *b,
                                   struct GlAlgebra **out);

/**
 * # Safety
 * `alg` must be NULL or a handle from this library that was not yet freed.
 */
void gl_algebra_free(struct GlAlgebra *alg);

/**
 * Brackets two elements written like `2*L(3) - Y(1/2)`; the result is
 * written to `out` as a new string.
 *
 * # Safety
 * `alg` must be a live handle, `x` and `y` valid strings, `out` writable.
 */
enum GlStatus gl_bracket(const struct GlAlgebra *alg, const char *x, const char *y, char **out);

/**
 * Whether every Jacobi cyclic sum of the algebra's description vanishes
 * identically in the indices and parameters.
 *
 * # Safety
 * `alg` must be a live handle and `passed` writable.
 */
enum GlStatus gl_jacobi_symbolic(const struct GlAlgebra *alg, bool *passed);

/**
 * Dimension of the outer derivations of one degree (e.g. `"-1/2"`) on a
 * window such as `"-10:10"` (NULL for that default).
 *
 * # Safety
 * `alg` must be a live handle, `degree` a valid string, `window` NULL or a
 * valid string, `dim` writable.
 */
enum GlStatus gl_h1_outer_dim(const struct GlAlgebra *alg,
                              const char *degree,
                              const char *window,
                              uint32_t margin,
                              size_t *dim);

/**
 * Dimension of the center supported on the window interior.
 *
 * # Safety
 * As for [`gl_h1_outer_dim`].
 */
enum GlStatus gl_center_dim(const struct GlAlgebra *alg,
                            const char *window,
                            uint32_t margin,
                            size_t *dim);

/**
 * Runs a command-line invocation in-process, e.g. `{"h1-scan", "--a", "0",
 * "--b", "0", "--json"}` (without the program name). Output and error text
 * are returned as new strings; `exit_code` follows the command-line tool
 * (0 pass, 1 check failed, 2 usage or engine error).
 *
 * # Safety
 * `argv` must point to `argc` valid strings; the out-pointers must be
 * writable.
 */
enum GlStatus gl_run(size_t argc,
                     const char *const *argv,
                     char **stdout_text,
                     char **stderr_text,
                     int32_t *exit_code);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string from this library that was not yet freed.
 */
void gl_string_free(char *s);

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gl_last_error(void);

/**
 * Library version as a static string.
 */
const char *gl_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRADED_LIE_H */
