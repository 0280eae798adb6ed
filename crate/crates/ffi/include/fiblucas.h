#ifndef FIBLUCAS_H
#define FIBLUCAS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FlCayleyRoute {
  FL_CAYLEY_ROUTE_CLOSED = 0,
  FL_CAYLEY_ROUTE_CONSTRUCTIVE = 1,
} FlCayleyRoute;

typedef enum FlFamily {
  FL_FAMILY_FIBONACCI = 0,
  FL_FAMILY_LUCAS = 1,
  FL_FAMILY_APPELL = 2,
} FlFamily;

typedef enum FlFormat {
  FL_FORMAT_JSON = 0,
  FL_FORMAT_LATEX = 1,
} FlFormat;

typedef enum FlMapKind {
  FL_MAP_KIND_AL = 0,
  FL_MAP_KIND_AF = 1,
} FlMapKind;

typedef enum FlRoute {
  FL_ROUTE_RECURRENCE = 0,
  FL_ROUTE_BETA = 1,
  FL_ROUTE_SERIES = 2,
} FlRoute;

typedef enum FlStatus {
  FL_STATUS_OK = 0,
  FL_STATUS_NULL_POINTER = 1,
  FL_STATUS_INVALID_UTF8 = 2,
  FL_STATUS_INVALID_JSON = 3,
  FL_STATUS_INVALID_ARGUMENT = 4,
  FL_STATUS_COMPUTATION = 5,
  FL_STATUS_PANIC = 6,
} FlStatus;

/**
 * Opaque polynomial handle.
 */
typedef struct FlPoly FlPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Free with `fl_string_free`.
 */
char *fl_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void fl_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FlStatus fl_poly_from_json(const char *json, struct FlPoly **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FlStatus fl_poly_to_json(const struct FlPoly *p, char **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void fl_poly_free(struct FlPoly *p);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum FlStatus fl_poly_equal(const struct FlPoly *a, const struct FlPoly *b, bool *out);

/**
 * Applies the family's derivation `power` times.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FlStatus fl_derive(enum FlFamily family,
                        const struct FlPoly *p,
                        uint32_t power,
                        struct FlPoly **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FlStatus fl_kernel_member(enum FlFamily family, const struct FlPoly *p, bool *out);

/**
 * Cayley element `C_n` of the Fibonacci or Lucas derivation.
 *
 * # Safety
 * `out` must be writable.
 */
enum FlStatus fl_cayley(enum FlFamily family,
                        uint32_t n,
                        enum FlCayleyRoute route,
                        struct FlPoly **out);

/**
 * Substitutes `x_i -> F_i(x)` / `L_i(x)` / `x^i`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FlStatus fl_phi_subst(enum FlFamily family, const struct FlPoly *p, struct FlPoly **out);

/**
 * Identity report as JSON or LaTeX text.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FlStatus fl_verify_identity(enum FlFamily family,
                                 const struct FlPoly *p,
                                 enum FlFormat format,
                                 char **out);

/**
 * First `count` b-coefficients as a JSON array of fraction strings.
 *
 * # Safety
 * `out` must be writable.
 */
enum FlStatus fl_b_sequence(enum FlMapKind kind, uint32_t count, char **out);

/**
 * `alpha_n^(s)` as a fraction string `"p"` or `"p/q"`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FlStatus fl_alpha(enum FlMapKind kind, uint32_t n, uint32_t s, enum FlRoute route, char **out);

/**
 * Builds `psi` to `n_max` and checks it against the Appell derivation; JSON report.
 *
 * # Safety
 * `out` must be writable.
 */
enum FlStatus fl_check_intertwining(enum FlMapKind kind,
                                    uint32_t n_max,
                                    enum FlRoute route,
                                    char **out);

/**
 * Staged determinant report as JSON; `ok` receives whether every stage passed.
 *
 * # Safety
 * `out` and `ok` must be writable.
 */
enum FlStatus fl_discriminant_demo(char **out, bool *ok);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FIBLUCAS_H */
