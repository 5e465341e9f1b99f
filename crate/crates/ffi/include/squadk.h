#ifndef SQUADK_H
#define SQUADK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which presentation to build from a window.
 */
typedef enum SqkFlavor {
  /**
   * `D*W`
   */
  SQK_FLAVOR_WALDHAUSEN = 0,
  /**
   * `DD*W`
   */
  SQK_FLAVOR_DERIVED = 1,
} SqkFlavor;

/**
 * Result code of every fallible call.
 */
typedef enum SqkStatus {
  SQK_STATUS_OK = 0,
  SQK_STATUS_NULL_ARGUMENT = 1,
  SQK_STATUS_INVALID_UTF8 = 2,
  SQK_STATUS_PARSE = 3,
  SQK_STATUS_COMPUTATION = 4,
  SQK_STATUS_PANIC = 5,
} SqkStatus;

/**
 * Opaque handle to a compiled presentation.
 */
typedef struct SqkSquad SqkSquad;

/**
 * Opaque window handle.
 */
typedef struct SqkWindow SqkWindow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer is
 * owned by the library and valid until the next failing call.
 */
const char *sqk_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sqk_string_free(char *s);

/**
 * Parses a window in `.wcat` text form.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SqkStatus sqk_window_parse(const char *text_ptr, struct SqkWindow **out);

/**
 * Generates the window of complexes over `F_p` in degrees `lo..=hi` with
 * total dimension at most `max_dim`, or per-degree dimension when
 * `per_degree` is nonzero.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SqkStatus sqk_window_chain(uint32_t p,
                                int32_t lo,
                                int32_t hi,
                                size_t max_dim,
                                bool per_degree,
                                struct SqkWindow **out);

/**
 * # Safety
 * `w` must be null or a handle from this library that was not freed.
 */
void sqk_window_free(struct SqkWindow *w);

/**
 * Canonical `.wcat` text of a window; free with [`sqk_string_free`].
 *
 * # Safety
 * `w` must be a live handle and `out` a valid pointer.
 */
enum SqkStatus sqk_window_write(const struct SqkWindow *w, char **out);

/**
 * Number of axiom violations and closure gaps; zero for a valid window.
 *
 * # Safety
 * `w` must be a live handle and `problems` a valid pointer.
 */
enum SqkStatus sqk_window_validate(const struct SqkWindow *w, size_t *problems);

/**
 * `.sqpres` text of `D*W` or `DD*W`; free with [`sqk_string_free`].
 *
 * # Safety
 * `w` must be a live handle and `out` a valid pointer.
 */
enum SqkStatus sqk_window_present(const struct SqkWindow *w, enum SqkFlavor flavor, char **out);

/**
 * Compiles `D*W` or `DD*W` of a window.
 *
 * # Safety
 * `w` must be a live handle and `out` a valid pointer.
 */
enum SqkStatus sqk_window_squad(const struct SqkWindow *w,
                                enum SqkFlavor flavor,
                                struct SqkSquad **out);

/**
 * Whether `μ̄: D*W → DD*W` and its candidate inverse check out on every
 * generator and induce isomorphisms on `π₀` and `π₁`.
 *
 * # Safety
 * `w` must be a live handle and `passed` a valid pointer.
 */
enum SqkStatus sqk_window_compare(const struct SqkWindow *w, bool *passed);

/**
 * Parses and compiles a presentation in `.sqpres` text form.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SqkStatus sqk_squad_parse(const char *text_ptr, struct SqkSquad **out);

/**
 * # Safety
 * `s` must be null or a handle from this library that was not freed.
 */
void sqk_squad_free(struct SqkSquad *s);

/**
 * `π₀` rendered like `Z^2 + Z/2`; free with [`sqk_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum SqkStatus sqk_squad_pi0(const struct SqkSquad *s, char **out);

/**
 * `π₁` rendered like `Z/2`; free with [`sqk_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum SqkStatus sqk_squad_pi1(const struct SqkSquad *s, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SQUADK_H */
