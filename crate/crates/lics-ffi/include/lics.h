#ifndef LICS_H
#define LICS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Pumping layout of the folded scheme.
 */
typedef enum LicsPumping {
  /**
   * Reservoir rates into m, n, f (`pump_m`, `pump_n`, `pump_f`).
   */
  LicsPumping_Open = 0,
  /**
   * Ground-state transfer probabilities (`pump_n`, `pump_f`).
   */
  LicsPumping_Closed = 1,
} LicsPumping;

/**
 * Call outcome. Everything other than `Ok` leaves the out-parameters
 * untouched.
 */
typedef enum LicsStatus {
  LicsStatus_Ok = 0,
  LicsStatus_NullPointer = 1,
  LicsStatus_InvalidArgument = 2,
  /**
   * The shared resonance denominator fell below the pole guard.
   */
  LicsStatus_ResonantPole = 3,
  /**
   * Degenerate steady state (singular population balance).
   */
  LicsStatus_Degenerate = 4,
  LicsStatus_InternalError = 5,
} LicsStatus;

typedef struct LicsFolded LicsFolded;

/**
 * Opaque ladder-parameter handle.
 */
typedef struct LicsLadder LicsLadder;

/**
 * Ladder-scheme parameters; all rates in one reference width.
 */
typedef struct LicsLadderConfig {
  double gamma_gm;
  double gamma_gn;
  double gamma_gf;
  /**
   * Light-induced width of the two-photon continuum resonance.
   */
  double li_nn;
  /**
   * Light-induced width of the second continuum resonance.
   */
  double li_ff;
  /**
   * Dimensionless discrete-transition drive.
   */
  double g_mn;
  double omega_1;
  double omega_2;
  double omega_l;
  double q_gn;
  double q_gf;
  double q_fn;
  double q_nn;
  double q_ff;
  /**
   * Cross-channel ratio in [-1, 1]; 1 for a single dominant channel.
   */
  double s_nf;
} LicsLadderConfig;

/**
 * Spectral point: complex responses of the fundamental and generated
 * waves plus the scaled mixing susceptibilities.
 */
typedef struct LicsLadderPoint {
  double f1_re;
  double f1_im;
  double fs_re;
  double fs_im;
  double chi3_s_re;
  double chi3_s_im;
  double chi3_1_re;
  double chi3_1_im;
} LicsLadderPoint;

/**
 * Folded-scheme parameters with uniform light-induced families.
 */
typedef struct LicsFoldedConfig {
  double rel_m;
  double rel_n;
  double rel_f;
  double coh_mn;
  double coh_mf;
  double coh_nf;
  double w_nm;
  double g_mn;
  double omega_mn;
  double omega_nf;
  double gamma_nn;
  double gamma_ff;
  double q_nn;
  double q_ff;
  double q_nf;
  enum LicsPumping pumping;
  double pump_m;
  double pump_n;
  double pump_f;
} LicsFoldedConfig;

typedef struct LicsFoldedState {
  double r_m;
  double r_n;
  double r_f;
  double r_nf_re;
  double r_nf_im;
  /**
   * Dissociation rate in the shared rate units.
   */
  double w_dot;
} LicsFoldedState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *lics_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *lics_version(void);

/**
 * Create a ladder handle from a config. Returns null on invalid input.
 *
 * # Safety
 * `cfg` must point to a valid `LicsLadderConfig`.
 */
struct LicsLadder *lics_ladder_new(const struct LicsLadderConfig *cfg);

/**
 * # Safety
 * `h` must be a pointer from `lics_ladder_new` (or null).
 */
void lics_ladder_free(struct LicsLadder *h);

/**
 * Set one parameter by its path name (`omega_1`, `li_nn`, `q_fn`, ...).
 *
 * # Safety
 * `h` must be a live handle; `name` a NUL-terminated string.
 */
enum LicsStatus lics_ladder_set(struct LicsLadder *h, const char *name, double value);

/**
 * Evaluate the closed-form spectral point.
 *
 * # Safety
 * `h` must be a live handle, `out` a valid pointer.
 */
enum LicsStatus lics_ladder_point(const struct LicsLadder *h, struct LicsLadderPoint *out);

/**
 * Scaled propagation inputs (absorption indices, nonlinear drive) at the
 * handle's detuning point.
 *
 * # Safety
 * `h` must be a live handle; out-pointers valid.
 */
enum LicsStatus lics_ladder_fwm_setup(const struct LicsLadder *h,
                                      double c_ratio,
                                      double *alpha1_bar,
                                      double *alpha_s_bar,
                                      double *eta_q0_bar);

/**
 * # Safety
 * `cfg` must point to a valid config.
 */
struct LicsFolded *lics_folded_new(const struct LicsFoldedConfig *cfg);

/**
 * # Safety
 * `h` must be a pointer from `lics_folded_new` (or null).
 */
void lics_folded_free(struct LicsFolded *h);

/**
 * Set one parameter by path name (`omega_nf`, `g_mn`, `q_nf`, `w_n`, ...).
 *
 * # Safety
 * `h` must be a live handle; `name` a NUL-terminated string.
 */
enum LicsStatus lics_folded_set(struct LicsFolded *h, const char *name, double value);

/**
 * Quasi-stationary populations and dissociation rate (open or closed per
 * the handle's pumping).
 *
 * # Safety
 * `h` must be a live handle, `out` valid.
 */
enum LicsStatus lics_folded_steady_state(const struct LicsFolded *h, struct LicsFoldedState *out);

/**
 * Scaled propagation inputs for the folded mixing process.
 *
 * # Safety
 * `h` must be a live handle; out-pointers valid.
 */
enum LicsStatus lics_folded_fwm_setup(const struct LicsFolded *h,
                                      double *alpha1_bar,
                                      double *alpha_s_bar,
                                      double *eta_q0_bar);

/**
 * Quantum conversion efficiency of the scaled coupled-wave solution at
 * optical depth `z_alpha10 = z * alpha_10`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LicsStatus lics_eta_q(double alpha1_bar,
                           double alpha_s_bar,
                           double eta_q0_bar,
                           double c_ratio,
                           double z_alpha10,
                           double *out);

/**
 * Conversion-against-absorption balance; positive means oscillatory
 * transfer.
 */
double lics_conversion_rate_b(double alpha1_bar,
                              double alpha_s_bar,
                              double eta_q0_bar,
                              double c_ratio);

/**
 * Unperturbed conversion scale `1 + q^2`.
 */
double lics_eta0_fano(double q_gn);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LICS_H */
