#ifndef RIDGE_H
#define RIDGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RidgeStatus {
  RIDGE_STATUS_OK = 0,
  RIDGE_STATUS_NULL_POINTER = 1,
  RIDGE_STATUS_INVALID_INPUT = 2,
  RIDGE_STATUS_DIMENSION_MISMATCH = 3,
  RIDGE_STATUS_SIZE = 4,
  RIDGE_STATUS_REGIME_INVALID = 5,
  RIDGE_STATUS_IO = 6,
  RIDGE_STATUS_CONFIG = 7,
  RIDGE_STATUS_PANIC = 8,
} RidgeStatus;

typedef enum RidgeActivation {
  RIDGE_ACTIVATION_RAMP = 0,
  RIDGE_ACTIVATION_SINE = 1,
  RIDGE_ACTIVATION_TANH = 2,
} RidgeActivation;

typedef enum RidgeInner {
  RIDGE_INNER_COVER_EXHAUSTIVE = 0,
  RIDGE_INNER_PROJECTED_GRADIENT = 1,
  RIDGE_INNER_FRANK_WOLFE = 2,
} RidgeInner;

// Opaque dataset handle.
typedef struct RidgeDatasetHandle RidgeDatasetHandle;

// Opaque model handle.
typedef struct RidgeModelHandle RidgeModelHandle;

// Greedy fit settings; the penalty is `lambda·v^exponent` (`exponent = 1` for linear).
typedef struct RidgeGreedyConfig {
  double radius;
  enum RidgeActivation activation;
  uintptr_t m_max;
  double lambda;
  double exponent;
  enum RidgeInner inner;
  uintptr_t restarts;
  uintptr_t steps;
  uintptr_t cover_m;
  uint64_t seed;
} RidgeGreedyConfig;

typedef struct RidgePenaltyConfig {
  double b;
  double b_n;
  double sigma2;
  double eta;
  double delta1;
  double delta2;
} RidgePenaltyConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *ridge_last_error(void);

// Creates an empty model on `dim` inputs.
//
// # Safety
// `out` must be valid for writes.
enum RidgeStatus ridge_model_new(uintptr_t dim, struct RidgeModelHandle **out);

// Appends `beta·sign·φ(θ·(x,1))`; `theta` has `dim + 1` entries and `sign` is `±1`.
//
// # Safety
// `model` must come from this library; `theta` must hold `theta_len` values.
enum RidgeStatus ridge_model_push_unit(struct RidgeModelHandle *model,
                                       double beta,
                                       enum RidgeActivation act,
                                       const double *theta,
                                       uintptr_t theta_len,
                                       int32_t sign);

// # Safety
// `model` must come from this library; `x` must hold `len` values; `out` must be writable.
enum RidgeStatus ridge_model_eval(const struct RidgeModelHandle *model,
                                  const double *x,
                                  uintptr_t len,
                                  double *out);

// `‖β‖₁` of the model, or NaN for a null handle.
//
// # Safety
// `model` must be null or come from this library.
double ridge_model_v(const struct RidgeModelHandle *model);

// Number of ridge terms, or 0 for a null handle.
//
// # Safety
// `model` must be null or come from this library.
uintptr_t ridge_model_num_terms(const struct RidgeModelHandle *model);

// # Safety
// `model` must be null or come from this library and not be used afterwards.
void ridge_model_free(struct RidgeModelHandle *model);

// Wraps a row-major `n×d` design and `n` responses.
//
// # Safety
// `x` must hold `n·d` values, `y` must hold `n`, and `out` must be writable.
enum RidgeStatus ridge_dataset_new(const double *x,
                                   uintptr_t n,
                                   uintptr_t d,
                                   const double *y,
                                   struct RidgeDatasetHandle **out);

// # Safety
// `data` must be null or come from this library and not be used afterwards.
void ridge_dataset_free(struct RidgeDatasetHandle *data);

// Runs the greedy pursuit and returns the final model.
//
// # Safety
// `data` must come from this library; `cfg` and `out` must be valid.
enum RidgeStatus ridge_fit_lpgp(const struct RidgeDatasetHandle *data,
                                const struct RidgeGreedyConfig *cfg,
                                struct RidgeModelHandle **out);

// Number of multisets of size `m` over `2d + 1` symbols.
//
// # Safety
// `out` must be writable.
enum RidgeStatus ridge_cover_count(uint64_t d, uint64_t m, uint64_t *out);

// # Safety
// `cfg`, `gamma` and `tau` must be valid.
enum RidgeStatus ridge_gamma_tau(const struct RidgePenaltyConfig *cfg, double *gamma, double *tau);

// # Safety
// `out` must be writable.
enum RidgeStatus ridge_pen_highdim(double v_f,
                                   uintptr_t n,
                                   uintptr_t d,
                                   double radius,
                                   double gamma,
                                   double b_n,
                                   double t_n,
                                   double *out);

// # Safety
// `out` must be writable.
enum RidgeStatus ridge_pen_nonoise(double v_f,
                                   uintptr_t n,
                                   uintptr_t d,
                                   double radius,
                                   double gamma,
                                   double *out);

// Returns `REGIME_INVALID` when the moderate-dimension guard fails.
//
// # Safety
// `out` must be writable.
enum RidgeStatus ridge_pen_moderate(double v_f,
                                    uintptr_t n,
                                    uintptr_t d,
                                    double radius,
                                    double gamma,
                                    double t_n,
                                    double *out);

// # Safety
// `out` must be writable.
enum RidgeStatus ridge_pen_mixed(double v_f,
                                 uintptr_t n,
                                 uintptr_t d,
                                 double radius,
                                 double gamma,
                                 double sigma,
                                 double c,
                                 double *out);

// `sgn(value)·min(|value|, b_n)`.
double ridge_truncate(double value, double b_n);

// # Safety
// `y` must hold `n` values and `out` must be writable.
enum RidgeStatus ridge_tail_tn(const double *y, uintptr_t n, double b_n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIDGE_H */
