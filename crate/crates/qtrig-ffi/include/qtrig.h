#ifndef QTRIG_H
#define QTRIG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every `qtrig_*` call.
 */
typedef enum QtrigStatus {
  QtrigStatus_Ok = 0,
  QtrigStatus_NullPointer = 1,
  QtrigStatus_InvalidArgument = 2,
  /**
   * Input outside the mathematical domain (nome modulus, tau half-plane,
   * product envelope).
   */
  QtrigStatus_Domain = 3,
  /**
   * Truncation cap reached before meeting the tolerance.
   */
  QtrigStatus_NonConverged = 4,
  /**
   * Intermediate exponential overflows double precision.
   */
  QtrigStatus_Range = 5,
  QtrigStatus_UnknownIdentity = 6,
  /**
   * Identity has no formal mode.
   */
  QtrigStatus_NotFormal = 7,
  /**
   * Finite-difference step at the cancellation floor.
   */
  QtrigStatus_Unstable = 8,
  QtrigStatus_Internal = 9,
} QtrigStatus;

/**
 * Opaque truncation policy handle.
 */
typedef struct QtrigPolicy QtrigPolicy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a truncation policy. Returns NULL if `tol <= 0` or
 * `max_terms == 0`. Free with `qtrig_policy_free`.
 */
struct QtrigPolicy *qtrig_policy_new(double tol, uintptr_t max_terms);

/**
 * Free a policy created by `qtrig_policy_new`. NULL is a no-op.
 *
 * # Safety
 * `policy` must be either NULL or a pointer previously returned by
 * `qtrig_policy_new` that has not been freed.
 */
void qtrig_policy_free(struct QtrigPolicy *policy);

/**
 * Gosper's q-sine at z for nome q (|q| in (0, 1)).
 *
 * # Safety
 * `policy` must be NULL or a live policy handle; `out_re`/`out_im` must be
 * valid writable pointers.
 */
enum QtrigStatus qtrig_sinq(double z_re,
                            double z_im,
                            double q_re,
                            double q_im,
                            const struct QtrigPolicy *policy,
                            double *out_re,
                            double *out_im);

/**
 * Gosper's q-cosine at z for nome q.
 *
 * # Safety
 * Same contract as `qtrig_sinq`.
 */
enum QtrigStatus qtrig_cosq(double z_re,
                            double z_im,
                            double q_re,
                            double q_im,
                            const struct QtrigPolicy *policy,
                            double *out_re,
                            double *out_im);

/**
 * Gosper's constant Pi_q.
 *
 * # Safety
 * Same contract as `qtrig_sinq`.
 */
enum QtrigStatus qtrig_piq(double q_re,
                           double q_im,
                           const struct QtrigPolicy *policy,
                           double *out_re,
                           double *out_im);

/**
 * First Jacobi theta function theta_1(z | tau), Im(tau) > 0.
 *
 * # Safety
 * Same contract as `qtrig_sinq`.
 */
enum QtrigStatus qtrig_theta1(double z_re,
                              double z_im,
                              double tau_re,
                              double tau_im,
                              const struct QtrigPolicy *policy,
                              double *out_re,
                              double *out_im);

/**
 * Number of identities in the catalog.
 */
uintptr_t qtrig_identity_count(void);

/**
 * Copy the NUL-terminated id of the identity at `index` into `buf`.
 * Fails with `InvalidArgument` if the index is out of range or the buffer
 * is too small.
 *
 * # Safety
 * `buf` must point to at least `buf_len` writable bytes.
 */
enum QtrigStatus qtrig_identity_id(uintptr_t index, char *buf, uintptr_t buf_len);

/**
 * Sweep one identity over the default seeded grid (overriding the seed and
 * z-sample count when nonzero) and report the worst relative residual and
 * the pass flag at the grid tolerance 1e-9.
 *
 * # Safety
 * `id` must be a NUL-terminated string; out-pointers must be writable;
 * `policy` must be NULL or a live handle.
 */
enum QtrigStatus qtrig_check(const char *id,
                             uint64_t seed,
                             uintptr_t grid_n,
                             const struct QtrigPolicy *policy,
                             double *out_max_rel_err,
                             int32_t *out_pass);

/**
 * Formally verify one identity through `t^order` (`order <= 0` means the
 * per-identity default). `out_verified`: 1 verified, 0 refuted,
 * -1 inconclusive (order below the leading exponent).
 *
 * # Safety
 * `id` must be a NUL-terminated string; `out_verified` must be writable.
 */
enum QtrigStatus qtrig_prove(const char *id, int64_t order, int32_t *out_verified);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QTRIG_H */
