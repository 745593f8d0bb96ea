#ifndef TAUCAT_H
#define TAUCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TaucatStatus {
  TAUCAT_STATUS_OK = 0,
  TAUCAT_STATUS_NULL_ARGUMENT = 1,
  TAUCAT_STATUS_INVALID_UTF8 = 2,
  TAUCAT_STATUS_PARSE = 3,
  TAUCAT_STATUS_UNKNOWN_MEMBER = 4,
  TAUCAT_STATUS_INVALID_ARGUMENT = 5,
  TAUCAT_STATUS_PRECONDITION = 6,
  TAUCAT_STATUS_CAP_EXCEEDED = 7,
  TAUCAT_STATUS_FAILED = 8,
  TAUCAT_STATUS_PANIC = 9,
} TaucatStatus;

/**
 * A parsed bound quiver algebra.
 */
typedef struct TaucatAlgebra TaucatAlgebra;

/**
 * An algebra together with its inventory of indecomposables and caches.
 */
typedef struct TaucatContext TaucatContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *taucat_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *taucat_last_error_message(void);

/**
 * Parses a quiver file.
 *
 * # Safety
 * `source` must be a nul-terminated string and `out` a valid pointer.
 */
enum TaucatStatus taucat_algebra_parse(const char *source, struct TaucatAlgebra **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a handle from `taucat_algebra_parse`.
 */
size_t taucat_algebra_vertex_count(const struct TaucatAlgebra *algebra);

/**
 * Dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a handle from `taucat_algebra_parse`.
 */
size_t taucat_algebra_dim(const struct TaucatAlgebra *algebra);

/**
 * # Safety
 * `algebra` must be null or a handle from `taucat_algebra_parse` not yet freed.
 */
void taucat_algebra_free(struct TaucatAlgebra *algebra);

/**
 * Builds the inventory of indecomposables, giving up beyond `cap` members.
 *
 * # Safety
 * `algebra` must be a live algebra handle and `out` a valid pointer.
 */
enum TaucatStatus taucat_context_build(const struct TaucatAlgebra *algebra,
                                       size_t cap,
                                       struct TaucatContext **out);

/**
 * # Safety
 * `ctx` must be null or a handle from `taucat_context_build` not yet freed.
 */
void taucat_context_free(struct TaucatContext *ctx);

/**
 * Number of indecomposables, or 0 for a null handle.
 *
 * # Safety
 * `ctx` must be null or a live context handle.
 */
size_t taucat_inventory_len(const struct TaucatContext *ctx);

/**
 * Name of the indecomposable with the given index.
 *
 * # Safety
 * `ctx` must be a live context handle and `out` a valid pointer. The string
 * written to `out` must be released with `taucat_string_free`.
 */
enum TaucatStatus taucat_inventory_name(const struct TaucatContext *ctx, size_t index, char **out);

/**
 * Predicates of the subcategory named by `members`, as JSON.
 *
 * # Safety
 * `ctx` must be a live context handle, `members` a nul-terminated string and
 * `out` a valid pointer.
 */
enum TaucatStatus taucat_check(const struct TaucatContext *ctx, const char *members, char **out);

/**
 * Completes the subcategory named by `members`. `method` is `fac`,
 * `tau-perp` or `tilting`.
 *
 * # Safety
 * `ctx` must be a live context handle, `members` and `method` nul-terminated
 * strings and `out` a valid pointer.
 */
enum TaucatStatus taucat_complete(const struct TaucatContext *ctx,
                                  const char *members,
                                  const char *method,
                                  char **out);

/**
 * Lists subcategories of one kind: `stt`, `tors`, `tilting` or `tau-rigid`.
 *
 * # Safety
 * `ctx` must be a live context handle, `what` a nul-terminated string and
 * `out` a valid pointer.
 */
enum TaucatStatus taucat_enumerate(const struct TaucatContext *ctx, const char *what, char **out);

/**
 * Runs checks, selected as on the command line: `all`, a key such as `3.4`
 * or a check name. `passed` (may be null) receives 1 if every check passed.
 *
 * # Safety
 * `ctx` must be a live context handle, `selection` a nul-terminated string,
 * `out` a valid pointer and `passed` null or valid.
 */
enum TaucatStatus taucat_verify(const struct TaucatContext *ctx,
                                const char *selection,
                                int32_t *passed,
                                char **out);

/**
 * DOT source of a graph: `tors-hasse` or `stt-exchange`.
 *
 * # Safety
 * `ctx` must be a live context handle, `kind` a nul-terminated string and
 * `out` a valid pointer.
 */
enum TaucatStatus taucat_export_dot(const struct TaucatContext *ctx, const char *kind, char **out);

/**
 * Releases a string returned through an `out` parameter.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void taucat_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAUCAT_H */
