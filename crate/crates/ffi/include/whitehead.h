/* Generated by cbindgen; do not edit. */

#ifndef WHITEHEAD_H
#define WHITEHEAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  WH_NORMALIZATION_RESCALED = 0,
  WH_NORMALIZATION_KIRBY = 1,
} WhNormalization;

typedef enum {
  WH_PRECISION_AUTO = 0,
  WH_PRECISION_DOUBLE = 1,
  WH_PRECISION_EXTENDED = 2,
} WhPrecision;

typedef enum {
  WH_STATUS_OK = 0,
  WH_STATUS_NULL_POINTER = 1,
  WH_STATUS_NOT_COPRIME = 2,
  WH_STATUS_DOMAIN = 3,
  WH_STATUS_BRANCH = 4,
  WH_STATUS_ACCURACY = 5,
  WH_STATUS_CONVERGENCE = 6,
  WH_STATUS_INFEASIBLE = 7,
  WH_STATUS_INTERNAL = 8,
  WH_STATUS_BUFFER_TOO_SMALL = 9,
  WH_STATUS_PANIC = 10,
} WhStatus;

/**
 * Opaque surgery presentation of the slope p/q.
 */
typedef struct WhSurgery WhSurgery;

typedef struct {
  double re;
  double im;
} WhComplex;

typedef struct {
  WhComplex z0;
  WhComplex u;
  WhComplex v;
  WhComplex gamma;
  WhComplex z1;
  WhComplex z2;
  WhComplex theta1;
  WhComplex theta2;
  double vol;
  /**
   * Chern–Simons invariant in [0, π²)
   */
  double cs;
  double residual;
  double lower_bound;
  bool lower_bound_vacuous;
  bool in_set_s;
} WhGeometry;

typedef struct {
  WhComplex theta1;
  WhComplex theta2;
  WhComplex zeta;
  WhComplex omega;
  WhComplex h;
  double tv_sine_ratio;
  double tv_coefficient;
  double residual;
} WhAsymptotics;

typedef struct {
  uint32_t m;
  WhComplex j_bar;
  WhComplex j_norm;
  /**
   * true when the value was computed in extended precision
   */
  bool extended;
} WhInvariant;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *wh_version(void);

/**
 * Copy the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL,
 * or 0 if the last call succeeded.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t wh_last_error_message(char *buf, size_t len);

/**
 * Create the presentation of p/q surgery. Free it with `wh_surgery_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
WhStatus wh_surgery_new(int64_t p, int64_t q, WhSurgery **out);

/**
 * # Safety
 * `h` must be null or a handle from `wh_surgery_new` not yet freed.
 */
void wh_surgery_free(WhSurgery *h);

/**
 * Number of surgery components l of the chain-link presentation, 0 on a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t wh_surgery_length(const WhSurgery *h);

/**
 * Complete hyperbolic structure, volume and Chern–Simons invariant.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
WhStatus wh_geometry(const WhSurgery *h, WhGeometry *out);

/**
 * Critical point of the potential and the leading-order constants.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
WhStatus wh_asymptotics(const WhSurgery *h, WhAsymptotics *out);

/**
 * The unit-modulus phase constant C_N of the leading-order formula.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
WhStatus wh_phase_constant(const WhSurgery *h, uint32_t n, WhComplex *out);

/**
 * Relative invariant J̄_m at level N (r = 2N+1) through the reduced sum.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
WhStatus wh_invariant(const WhSurgery *h,
                      uint32_t n,
                      uint32_t m,
                      WhPrecision precision,
                      WhInvariant *out);

/**
 * J̄_m by the direct multi-sum; fails with `Infeasible` beyond the term budget.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
WhStatus wh_invariant_bruteforce(const WhSurgery *h, uint32_t n, uint32_t m, WhInvariant *out);

/**
 * Turaev–Viro invariant at level N. When `per_color` is non-null it receives
 * μ²|J̄_m|² for m = 1..N and `len` must be at least N.
 *
 * # Safety
 * `h` must be a live handle, `total` valid, and `per_color` null or valid for `len` doubles.
 */
WhStatus wh_turaev_viro(const WhSurgery *h,
                        uint32_t n,
                        WhNormalization normalization,
                        WhPrecision precision,
                        double *per_color,
                        size_t len,
                        double *total);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WHITEHEAD_H */
