#ifndef SHRINKER_SPECTRA_H
#define SHRINKER_SPECTRA_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShsStatus {
  SHS_STATUS_OK = 0,
  SHS_STATUS_NULL_POINTER = 1,
  SHS_STATUS_INVALID_ARGUMENT = 2,
  SHS_STATUS_INSUFFICIENT_DATA = 3,
  SHS_STATUS_PARSE = 4,
  SHS_STATUS_DOMAIN = 5,
  SHS_STATUS_PANIC = 6,
} ShsStatus;

/**
 * Opaque eigenvalue sequence.
 */
typedef struct ShsSpectrum ShsSpectrum;

typedef struct ShsYangReport {
  size_t k;
  double lhs;
  double rhs;
  double gap;
  double relative_gap;
  double shift;
  bool satisfied;
} ShsYangReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *shs_last_error(void);

/**
 * First `count` distinct levels of the round sphere of dimension `n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_sphere(size_t n, size_t count, struct ShsSpectrum **out);

/**
 * First `count` levels of the Ornstein–Uhlenbeck operator on `ℝⁿ`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_ou(size_t n, size_t count, struct ShsSpectrum **out);

/**
 * Cylinder with a `k`-sphere factor and total dimension `n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_cylinder(size_t k, size_t n, size_t count, struct ShsSpectrum **out);

/**
 * Lowest `count` Dirichlet eigenvalues on `(a, b)` with `grid` interior points.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_dirichlet_interval(double a,
                                               double b,
                                               size_t grid,
                                               size_t count,
                                               struct ShsSpectrum **out);

/**
 * Parse a spectrum from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_from_json(const char *json, struct ShsSpectrum **out);

/**
 * # Safety
 * `spectrum` must come from this library and not be used afterwards. Null is ignored.
 */
void shs_spectrum_free(struct ShsSpectrum *spectrum);

/**
 * # Safety
 * `spectrum` must be a live handle; `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_num_levels(const struct ShsSpectrum *spectrum, size_t *out);

/**
 * Eigenvalue and multiplicity of level `index`.
 *
 * # Safety
 * `spectrum` must be a live handle; `lambda` and `mult` must be valid for writes.
 */
enum ShsStatus shs_spectrum_level(const struct ShsSpectrum *spectrum,
                                  size_t index,
                                  double *lambda,
                                  size_t *mult);

/**
 * JSON form of a spectrum; release it with [`shs_string_free`].
 *
 * # Safety
 * `spectrum` must be a live handle; `out` must be valid for writes.
 */
enum ShsStatus shs_spectrum_to_json(const struct ShsSpectrum *spectrum, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void shs_string_free(char *s);

/**
 * Quadratic inequality at index `k`.
 *
 * # Safety
 * `spectrum` must be a live handle; `out` must be valid for writes.
 */
enum ShsStatus shs_yang_check(const struct ShsSpectrum *spectrum,
                              size_t n,
                              double min_x2,
                              size_t k,
                              struct ShsYangReport *out);

/**
 * Upper bound on `λₖ + shift` for the closed problem.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ShsStatus shs_thm12_bound(size_t n, double min_x2, size_t k, double *out);

/**
 * Growth coefficient `a(m)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ShsStatus shs_a_coeff(size_t m, double *out);

/**
 * Row `k` (1..=41) of the coefficient table, unrounded.
 *
 * # Safety
 * `a1`, `a2_next` and `a3_next` must be valid for writes.
 */
enum ShsStatus shs_table1_row(size_t k, double *a1, double *a2_next, double *a3_next);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHRINKER_SPECTRA_H */
