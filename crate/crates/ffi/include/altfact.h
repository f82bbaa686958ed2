#ifndef ALTFACT_H
#define ALTFACT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AltfactStatus {
  ALTFACT_STATUS_OK = 0,
  ALTFACT_STATUS_NULL_POINTER = 1,
  ALTFACT_STATUS_INVALID_ARGUMENT = 2,
  ALTFACT_STATUS_POLE_PROXIMITY = 3,
  ALTFACT_STATUS_DOMAIN = 4,
  ALTFACT_STATUS_NO_CONVERGENCE = 5,
  ALTFACT_STATUS_OVERFLOW = 6,
  ALTFACT_STATUS_BUFFER_TOO_SMALL = 7,
  ALTFACT_STATUS_PANIC = 8,
} AltfactStatus;

/*
 Representation selector for [`altfact_eval_a`] and [`altfact_eval_a1`].
 */
typedef enum AltfactMethod {
  ALTFACT_METHOD_INTEGRAL = 0,
  ALTFACT_METHOD_RECURRENCE = 1,
  ALTFACT_METHOD_SERIES = 2,
  ALTFACT_METHOD_CLOSED_FORM = 3,
  ALTFACT_METHOD_SLAVIC = 4,
  ALTFACT_METHOD_AUTO = 5,
} AltfactMethod;

/*
 Function selector for [`altfact_singularity`].
 */
typedef enum AltfactFunction {
  ALTFACT_FUNCTION_A = 0,
  ALTFACT_FUNCTION_A1 = 1,
  ALTFACT_FUNCTION_GAMMA = 2,
} AltfactFunction;

/*
 Opaque evaluation context.
 */
typedef struct AltfactContext AltfactContext;

typedef struct AltfactOutcome {
  double value_re;
  double value_im;
  double err_est;
  /*
   The representation actually used, never `Auto`.
   */
  int32_t method;
  uint64_t work;
} AltfactOutcome;

typedef struct AltfactSingularity {
  int64_t location;
  /*
   0 when the function is regular at `location`, 1 for a simple pole.
   */
  uint8_t order;
  double residue_re;
  double residue_im;
  double principal_value_re;
  double principal_value_im;
} AltfactSingularity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates a context with default settings. Returns NULL only on allocation
 failure or panic. Release with [`altfact_context_free`].
 */
struct AltfactContext *altfact_context_new(void);

/*
 # Safety
 `ctx` must be NULL or a pointer from [`altfact_context_new`] not yet freed.
 */
void altfact_context_free(struct AltfactContext *ctx);

/*
 Sets the relative tolerance; the absolute tolerance becomes `tol / 100`.

 # Safety
 `ctx` must be NULL or a live context.
 */
enum AltfactStatus altfact_context_set_tolerance(struct AltfactContext *ctx, double tol);

/*
 # Safety
 `ctx` must be NULL or a live context.
 */
enum AltfactStatus altfact_context_set_max_terms(struct AltfactContext *ctx, uint64_t max_terms);

/*
 Message for the most recent failure on `ctx`, or an empty string. The
 pointer stays valid until the next call that fails on the same context.

 # Safety
 `ctx` must be NULL or a live context.
 */
const char *altfact_context_last_error(const struct AltfactContext *ctx);

/*
 Static description of an [`AltfactStatus`] value; unknown codes get a
 generic message.
 */
const char *altfact_status_message(int32_t status);

/*
 Evaluates A(re + i im). `method` is an [`AltfactMethod`] value.

 # Safety
 `ctx` must be a live context and `out` valid for one write.
 */
enum AltfactStatus altfact_eval_a(struct AltfactContext *ctx,
                                  double re,
                                  double im,
                                  int32_t method,
                                  struct AltfactOutcome *out);

/*
 Evaluates A1(re + i im). `method` is an [`AltfactMethod`] value.

 # Safety
 `ctx` must be a live context and `out` valid for one write.
 */
enum AltfactStatus altfact_eval_a1(struct AltfactContext *ctx,
                                   double re,
                                   double im,
                                   int32_t method,
                                   struct AltfactOutcome *out);

/*
 # Safety
 `out_re` and `out_im` must be valid for one write each.
 */
enum AltfactStatus altfact_gamma(double re, double im, double *out_re, double *out_im);

/*
 Residue and principal value of `function` at the integer `m`.

 # Safety
 `out` must be valid for one write.
 */
enum AltfactStatus altfact_singularity(int32_t function, int64_t m, struct AltfactSingularity *out);

/*
 The constant L2 = 1 + e Ei(-1).
 */
double altfact_constant_l2(void);

/*
 The Gompertz constant -e Ei(-1) = 1 - L2.
 */
double altfact_constant_gompertz(void);

/*
 Writes the exact A(n), 0 <= n <= 500, as a NUL-terminated decimal string.

 `required` (may be NULL) receives the buffer size needed including the
 terminator. With `buf` NULL or `len` too small nothing is written to `buf`
 and [`AltfactStatus::BufferTooSmall`] is returned.

 # Safety
 `buf` must be NULL or valid for `len` bytes; `required` NULL or valid for
 one write.
 */
enum AltfactStatus altfact_integer_oracle(uint32_t n, char *buf, size_t len, size_t *required);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALTFACT_H */
