#pragma once

namespace sqzcool {

/// Mechanical resonator and driven cavity. Rates and frequencies share one
/// unit; validate() rescales everything so that omega_m == 1.
struct OptomechParams {
  double omega_m = 1.0;
  double gamma = 0.0;         // mechanical energy damping
  double n_th = 0.0;          // thermal phonon occupation
  double kappa_a_s = 0.0;     // cavity decay into the squeezed channel
  double kappa_a_loss = 0.0;  // cavity decay into vacuum modes
  double delta_a = 0.0;       // laser-cavity detuning
  double g = 0.0;             // linearized optomechanical coupling

  double kappa_a() const { return kappa_a_s + kappa_a_loss; }
};

/// Degenerate parametric oscillator feeding the cavity.
struct SqueezerParams {
  double chi = 0.0;           // parametric gain
  double kappa_c_s = 0.0;     // decay into the channel that drives the cavity
  double kappa_c_loss = 0.0;  // decay into uncontrolled modes
  double phi = 0.0;           // squeezing phase, radians

  double kappa_c() const { return kappa_c_s + kappa_c_loss; }
};

/// A parameter set that passed validation, in units of omega_m.
struct ValidatedModel {
  OptomechParams optomech;
  SqueezerParams squeezer;
  double r_plus = 0.0;   // decay rate of the squeezed quadrature
  double r_minus = 0.0;  // decay rate of the anti-squeezed quadrature
  double xi = 0.0;       // purity of the squeezed drive, in [0, 1]
  double frequency_unit = 1.0;  // omega_m as supplied, before rescaling

  double omega_m() const { return optomech.omega_m; }
  double kappa_a() const { return optomech.kappa_a(); }
  double kappa_c() const { return squeezer.kappa_c(); }
  double delta_a() const { return optomech.delta_a; }
  double phi() const { return squeezer.phi; }
};

/// Checks every physical constraint and returns the rescaled model. Throws
/// Error (kNegativeInput, kNonPositiveRate or kThresholdViolation) otherwise.
ValidatedModel validate(const OptomechParams& optomech,
                        const SqueezerParams& squeezer);

/// Fraction of the cavity input that originates from the squeezer output.
double loss_factor(double kappa_a_s, double kappa_a_loss, double kappa_c_s,
                   double kappa_c_loss);

/// Maps phi into [0, pi).
double canonical_phase(double phi);

/// Oscillator parameters that produce squeezing s0 at zero frequency with
/// bandwidth r_plus and overall purity xi.
///
/// The purity is split between the two couplers: cavity_fraction is the
/// cavity-side ratio kappa_a_s / kappa_a the caller will use, and the
/// oscillator's own split is chosen as kappa_c_s / kappa_c = xi /
/// cavity_fraction. Of the two roots (chi, kappa_c) with chi + kappa_c =
/// r_plus, the below-threshold one (chi < kappa_c) is returned.
///
/// Throws kInfeasible when (1 - s0) / xi reaches 1 (within 1e-12), i.e. no
/// stable oscillator reaches that squeezing at that purity.
SqueezerParams from_observables(double s0, double r_plus, double xi,
                                double phi, double cavity_fraction = 1.0);

/// Squeezing feasibility margin used by from_observables.
inline constexpr double kFeasibilityMargin = 1e-12;

}  // namespace sqzcool
