#ifndef LIE_FFI_H
#define LIE_FFI_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LieStatus {
  LIE_STATUS_OK = 0,
  LIE_STATUS_NULL_POINTER = 1,
  LIE_STATUS_INVALID_ARGUMENT = 2,
  LIE_STATUS_PARSE = 3,
  LIE_STATUS_DEGREE_MISMATCH = 4,
  LIE_STATUS_RESOURCE_LIMIT = 5,
  LIE_STATUS_PANIC = 6,
} LieStatus;

/**
 * Opaque group algebra element with rational coefficients.
 */
typedef struct LieElement LieElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. Owned by the
 * library; do not free.
 */
const char *lie_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void lie_string_free(char *s);

/**
 * # Safety
 * `x` must be NULL or a handle returned by this library.
 */
void lie_element_free(struct LieElement *x);

/**
 * `κ_ij` in `Q[S_n]`. Indices are 1-based.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LieStatus lie_kappa(size_t n, size_t i, size_t j, struct LieElement **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum LieStatus lie_nu(size_t n, size_t i, size_t j, size_t k, struct LieElement **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum LieStatus lie_eta(size_t n, size_t i, size_t j, size_t k, size_t l, struct LieElement **out);

/**
 * Parses `[{"cycles": [[1, 2]], "coefficient": "-1/2"}, ...]`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum LieStatus lie_element_from_json(size_t n, const char *json, struct LieElement **out);

/**
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum LieStatus lie_element_bracket(const struct LieElement *a,
                                   const struct LieElement *b,
                                   struct LieElement **out);

/**
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum LieStatus lie_element_multiply(const struct LieElement *a,
                                    const struct LieElement *b,
                                    struct LieElement **out);

/**
 * # Safety
 * `x` must be live; `out` valid for writes.
 */
enum LieStatus lie_element_is_lie(const struct LieElement *x, bool *out);

/**
 * Cycle notation, e.g. `(1 2) - (2 3)`.
 *
 * # Safety
 * `x` must be live; `out` valid for writes.
 */
enum LieStatus lie_element_to_string(const struct LieElement *x, char **out);

/**
 * # Safety
 * `x` must be live; `out` valid for writes.
 */
enum LieStatus lie_element_to_json(const struct LieElement *x, char **out);

/**
 * Characteristic polynomial of the action on `Q^n`, as a JSON array of
 * rational strings `c_0, ..., c_n`.
 *
 * # Safety
 * `x` must be live; `out` valid for writes.
 */
enum LieStatus lie_element_charpoly(const struct LieElement *x, char **out);

/**
 * Dimension of the space of Lie elements in `Q[S_n]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LieStatus lie_space_dim(size_t n, size_t *out);

/**
 * Shuffle determinant of two square matrices written as `"1 2; 3/4 -1"`.
 * The result is a rational string.
 *
 * # Safety
 * `a`, `b` must be NUL-terminated strings; `out` valid for writes.
 */
enum LieStatus lie_sdet(const char *a, const char *b, char **out);

/**
 * Runs one seeded check and writes the report as JSON. `theorem` is one of
 * `mtt`, `pft`, `main`, `iota`. A failing check still returns `LIE_STATUS_OK`;
 * inspect the `status` field of the report.
 *
 * # Safety
 * `theorem` must be a NUL-terminated string; `out` valid for writes.
 */
enum LieStatus lie_verify(const char *theorem, size_t n, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIE_FFI_H */
