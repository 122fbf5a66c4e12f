#pragma once

#include "sqzcool/model_params.hpp"

namespace sqzcool {

struct ScatteringRates {
  double a_plus = 0.0;   // Stokes, adds a phonon
  double a_minus = 0.0;  // anti-Stokes, removes a phonon
};

/// A_+ = G^2 s_a(-omega_m), A_- = G^2 s_a(+omega_m).
ScatteringRates scattering_rates(const ValidatedModel& model);

/// Optical cooling rate from the standard closed form. The squeezer never
/// enters. Cross-checks against A_- - A_+ and throws kInternalInconsistency
/// if the two disagree beyond a relative 1e-10.
double cooling_rate(const ValidatedModel& model);

/// The closed form alone, without the spectral cross-check.
double cooling_rate_closed_form(const ValidatedModel& model);

/// zeta = sqrt([k^2 + (D - w)^2] / [k^2 + (D + w)^2]).
double sideband_asymmetry(const ValidatedModel& model);

/// Back-action limit of unsqueezed sideband cooling, N_0. Requires
/// delta_a > 0.
double standard_backaction_limit(const ValidatedModel& model);

/// N_a = A_+ / Gamma. Throws kNotCooling when Gamma <= 0.
double backaction_limit(const ValidatedModel& model);

/// Closed form of N_a valid when phi sits at the optimal squeezing phase:
/// N_0 [1 + n(w_m)(1 + 1/zeta^2) - 2 m(w_m)/zeta].
double backaction_limit_at_optimal_phase(const ValidatedModel& model);

/// (gamma N_th + Gamma N_a) / (gamma + Gamma).
double mix_occupancy(double gamma, double n_th, double gamma_cool,
                     double n_a);

/// Steady phonon number. Returns N_th for an uncoupled resonator; throws
/// kNotCooling when the coupled resonator is not cooled (Gamma <= 0).
double steady_state(const ValidatedModel& model);

struct ApproxSteadyState {
  double n_st = 0.0;
  double cooperativity = 0.0;
  bool off_sideband = false;  // delta_a != omega_m, formula not intended
};

/// N_th / C + N_0 (1 - xi) with C = 2 G^2 / (gamma kappa_a).
ApproxSteadyState approx_steady_state(const ValidatedModel& model);

/// Relaxation N(t) = N_st + (N(0) - N_st) exp(-(gamma + Gamma) t).
double phonon_evolution(double t, double n_initial,
                        const ValidatedModel& model);

/// Threshold above which a weak-coupling ratio is reported.
inline constexpr double kWeakCouplingRatio = 0.3;

struct CoolingDiagnostics {
  // Largest of gamma/G, G/r_-, G/r_+, G/kappa_a, G/omega_m.
  double coupling_ratio = 0.0;
  bool weak_coupling_violated = false;
  bool off_sideband = false;
};

CoolingDiagnostics diagnose(const ValidatedModel& model);

struct CoolingReport {
  double a_plus = 0.0;
  double a_minus = 0.0;
  double gamma_cool = 0.0;
  double zeta = 0.0;
  double n0 = 0.0;
  double n_a = 0.0;
  double n_st = 0.0;
  double n_st_approx = 0.0;
  double cooperativity = 0.0;
  CoolingDiagnostics diagnostics;
};

/// Everything above for one model. Throws kNotCooling when Gamma <= 0.
CoolingReport cooling_report(const ValidatedModel& model);

}  // namespace sqzcool
