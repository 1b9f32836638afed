/* C interface to the negbeta library; see README.md for usage. */

#ifndef NEGBETA_H
#define NEGBETA_H

/* Generated by cbindgen from crates/negbeta-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a library call.
typedef enum NbStatus {
  // Success.
  NB_STATUS_OK = 0,
  // A required pointer argument was null.
  NB_STATUS_NULL_ARGUMENT = 1,
  // The base is not strictly between 1 and 2.
  NB_STATUS_BETA_OUT_OF_RANGE = 2,
  // The cut point lies outside the switch region.
  NB_STATUS_ALPHA_OUTSIDE_SWITCH = 3,
  // The preset name is not recognized.
  NB_STATUS_UNKNOWN_PRESET = 4,
  // The point lies outside the representable domain.
  NB_STATUS_X_OUT_OF_DOMAIN = 5,
  // A digit byte other than 0 or 1 was supplied.
  NB_STATUS_BAD_DIGIT = 6,
  // The coin word ran out before the expansion finished.
  NB_STATUS_COINS_EXHAUSTED = 7,
  // An iterative computation did not converge.
  NB_STATUS_NON_CONVERGENCE = 8,
  // No refutation witness was found.
  NB_STATUS_WITNESS_NOT_FOUND = 9,
  // Any other invalid argument or internal failure.
  NB_STATUS_INVALID_ARGUMENT = 10,
} NbStatus;

// How a point's expansion was classified.
typedef enum NbUniqueness {
  // Exactly one expansion; `detail` holds the certified cycle length.
  NB_UNIQUENESS_UNIQUE = 0,
  // More than one expansion; `detail` holds the first switch-region step.
  NB_UNIQUENESS_NOT_UNIQUE = 1,
  // Undecided within the horizon; `detail` is zero.
  NB_UNIQUENESS_UNDECIDED = 2,
} NbUniqueness;

// Opaque handle to a validated (base, cut point) pair.
typedef struct NbParams NbParams;

// Plain-old-data snapshot of the constants derived from a handle.
typedef struct NbParamsInfo {
  double beta;
  double alpha;
  // Left end of the representable domain.
  double m_minus;
  // Right end of the representable domain.
  double m_plus;
  // Left end of the switch region.
  double s_lo;
  // Right end of the switch region.
  double s_hi;
} NbParamsInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a parameter handle from a numeric cut point.
//
// # Safety
// `out` must be a valid pointer to a `NbParams*` slot.
enum NbStatus nb_params_new(double beta, double alpha, struct NbParams **out);

// Create a parameter handle from a preset name
// (`ito-sadahiro|odd-greedy|midpoint|s-left|s-right`).
//
// # Safety
// `preset` must be a valid NUL-terminated string and `out` a valid slot.
enum NbStatus nb_params_new_preset(double beta, const char *preset, struct NbParams **out);

// Release a parameter handle. Passing null is a no-op.
//
// # Safety
// `p` must have come from `nb_params_new*` and not been freed before.
void nb_params_free(struct NbParams *p);

// Copy the derived constants of a handle into `info`.
//
// # Safety
// `p` must be a live handle and `info` a valid pointer.
enum NbStatus nb_params_info(const struct NbParams *p, struct NbParamsInfo *info);

// Expand `x` with the cut map, writing `depth` digit bytes into `digits`.
//
// # Safety
// `p` must be a live handle; `digits` must point to at least `depth` bytes.
enum NbStatus nb_digits_r(const struct NbParams *p, double x, uint8_t *digits, uintptr_t depth);

// Expand `x` with the alternating tie rule.
//
// # Safety
// Same contract as [`nb_digits_r`].
enum NbStatus nb_digits_alt(const struct NbParams *p, double x, uint8_t *digits, uintptr_t depth);

// Expand `x` by the parameter-free partial-sum recursion.
//
// # Safety
// `digits` must point to at least `depth` bytes.
enum NbStatus nb_odd_greedy(double beta, double x, uint8_t *digits, uintptr_t depth);

// Expand `x` into the alternate-order maximal digit word.
//
// # Safety
// `digits` must point to at least `depth` bytes.
enum NbStatus nb_greedy(double beta, double x, uint8_t *digits, uintptr_t depth);

// Evaluate a digit word back to the point it represents, together with the
// truncation error bound.
//
// # Safety
// `digits` must point to `len` bytes; `value` and `error_bound` must be
// valid pointers.
enum NbStatus nb_evaluate(double beta,
                          const uint8_t *digits,
                          uintptr_t len,
                          double *value,
                          double *error_bound);

// Classify whether `x` has a unique expansion. `detail` receives the cycle
// length (unique), the first switch-region step (not unique), or zero.
//
// # Safety
// `kind` and `detail` must be valid pointers.
enum NbStatus nb_classify_uniqueness(double beta,
                                     double x,
                                     uintptr_t horizon,
                                     enum NbUniqueness *kind,
                                     uintptr_t *detail);

// Compute the support of the invariant density and return it as a JSON
// string `{"parts": [[lo, hi], ...], "iterations": n, "residual": r}`.
// The string must be released with [`nb_string_free`].
//
// # Safety
// `out` must be a valid pointer to a `char*` slot.
enum NbStatus nb_support_json(double beta, double alpha, char **out);

// Release a string allocated by this library. Passing null is a no-op.
//
// # Safety
// `s` must have come from this library and not been freed before.
void nb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEGBETA_H */
