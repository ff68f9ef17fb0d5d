#ifndef FGM_INACCURACY_H
#define FGM_INACCURACY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FgmStatus {
  FGM_STATUS_OK = 0,
  FGM_STATUS_NULL_POINTER = 1,
  FGM_STATUS_INVALID_UTF8 = 2,
  FGM_STATUS_PARSE = 3,
  FGM_STATUS_DOMAIN = 4,
  FGM_STATUS_QUADRATURE = 5,
  FGM_STATUS_UNSUPPORTED = 6,
  FGM_STATUS_PANIC = 7,
} FgmStatus;

typedef enum FgmMethod {
  FGM_METHOD_CLOSED_FORM = 0,
  FGM_METHOD_QUADRATURE = 1,
  FGM_METHOD_QUANTILE_FORM = 2,
} FgmMethod;

typedef enum FgmCpiBound {
  FGM_CPI_BOUND_BELOW_CE = -1,
  FGM_CPI_BOUND_EQUAL = 0,
  FGM_CPI_BOUND_ABOVE_CE = 1,
} FgmCpiBound;

/**
 * Opaque FGM model handle.
 */
typedef struct FgmModel FgmModel;

/**
 * Generalized order statistic parameters. Use `n == r`, `m == -1`,
 * `k == 1` for the r-th upper record and `m == 0`, `k == 1` for the r-th
 * order statistic out of n.
 */
typedef struct FgmGos {
  uint32_t r;
  uint32_t n;
  double m;
  double k;
} FgmGos;

typedef struct FgmMeasure {
  double value;
  double abs_error;
  enum FgmMethod method;
} FgmMeasure;

typedef struct FgmMoments {
  double mean;
  double variance;
} FgmMoments;

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *fgm_last_error_message(void);

/**
 * Builds a model from marginal spec strings such as `"exponential:theta=2"`.
 * `marginal_y` may be NULL to reuse `marginal_x`.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum FgmStatus fgm_model_new(const char *marginal_x,
                             const char *marginal_y,
                             double alpha,
                             struct FgmModel **out);

/**
 * # Safety
 * `model` must come from [`fgm_model_new`] and not be freed twice. NULL is a no-op.
 */
void fgm_model_free(struct FgmModel *model);

/**
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_c_star(const struct FgmGos *gos_params, double *out);

/**
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_concomitant_pdf(const struct FgmModel *model,
                                   const struct FgmGos *gos_params,
                                   double y,
                                   double *out);

/**
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_concomitant_cdf(const struct FgmModel *model,
                                   const struct FgmGos *gos_params,
                                   double y,
                                   double *out);

/**
 * Inaccuracy of the concomitant density relative to the Y marginal.
 *
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_inaccuracy(const struct FgmModel *model,
                              const struct FgmGos *gos_params,
                              struct FgmMeasure *out);

/**
 * Inaccuracy via the quantile representation.
 *
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_inaccuracy_quantile_form(const struct FgmModel *model,
                                            const struct FgmGos *gos_params,
                                            struct FgmMeasure *out);

/**
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_reversed_inaccuracy(const struct FgmModel *model,
                                       const struct FgmGos *gos_params,
                                       struct FgmMeasure *out);

/**
 * Cumulative past inaccuracy.
 *
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_cpi(const struct FgmModel *model,
                       const struct FgmGos *gos_params,
                       struct FgmMeasure *out);

/**
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_reversed_cpi(const struct FgmModel *model,
                                const struct FgmGos *gos_params,
                                struct FgmMeasure *out);

/**
 * # Safety
 * Pointers must be valid or NULL.
 */
enum FgmStatus fgm_cpi_bound(const struct FgmModel *model,
                             const struct FgmGos *gos_params,
                             enum FgmCpiBound *out);

/**
 * Spacing estimator of the CPI from `len` observations of Y.
 *
 * # Safety
 * `values` must point to `len` readable doubles.
 */
enum FgmStatus fgm_empirical_cpi(const double *values,
                                 size_t len,
                                 double alpha,
                                 const struct FgmGos *gos_params,
                                 double *out);

/**
 * Draws `len` concomitant values. Results depend only on `(seed, stream)`.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum FgmStatus fgm_sample_concomitants(const struct FgmModel *model,
                                       const struct FgmGos *gos_params,
                                       uint64_t seed,
                                       uint64_t stream,
                                       double *out,
                                       size_t len);

/**
 * Estimator moments for record concomitants with exponential Y of rate `theta2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FgmStatus fgm_moments_exponential(size_t n,
                                       double theta2,
                                       double alpha,
                                       uint32_t r,
                                       struct FgmMoments *out);

/**
 * Estimator moments for record concomitants with standard uniform Y.
 * `exact` selects the variance that accounts for dependence between
 * spacings; otherwise the spacings are treated as independent.
 *
 * # Safety
 * `out` must be writable.
 */
enum FgmStatus fgm_moments_uniform(size_t n,
                                   double alpha,
                                   uint32_t r,
                                   bool exact,
                                   struct FgmMoments *out);

#endif  /* FGM_INACCURACY_H */
