#pragma once

#include <optional>

#include "sqzcool/model_params.hpp"

namespace sqzcool {

/// Oscillator bandwidth used in place of r_+ -> infinity whenever a finite
/// model is needed for an unmatched configuration.
inline constexpr double kInfiniteBandwidthProxy = 1e3;

struct OptimalSqueezing {
  double phi_opt = 0.0;
  bool feasible = false;
  std::optional<double> r_plus_matched;
  double n_a_predicted = 0.0;
  double s0_threshold = 0.0;  // largest S(0) that still admits matching
};

/// Squeezing phase that minimizes the Stokes spectrum s_a(-omega_m), as
/// half the two-argument angle of (2 D k, D^2 - w^2 - k^2), in [0, pi).
/// Throws kDomainError unless delta_a > 0.
double optimal_phase(double delta_a, double kappa_a, double omega_m = 1.0);

/// 1 - 2 xi zeta / (1 + zeta).
double matching_threshold(double xi, double delta_a, double kappa_a,
                          double omega_m = 1.0);

/// Bandwidth at which the squeezing s0 cancels Stokes scattering as far as
/// the purity xi allows. When the matching equation has no finite root the
/// result is flagged infeasible and n_a_predicted holds the r_+ -> infinity
/// value instead.
OptimalSqueezing matched_bandwidth(double s0, double xi, double delta_a,
                                   double kappa_a, double omega_m = 1.0);

/// Back-action limit for a squeezed drive of unbounded bandwidth with
/// zero-frequency squeezing s0 and purity xi, at the optimal phase.
double infinite_bandwidth_backaction(double s0, double xi, double delta_a,
                                     double kappa_a, double omega_m = 1.0);

/// A complete model for cavity `base` driven at the optimal phase with the
/// matched bandwidth (or the infinite-bandwidth fallback).
struct MatchedConfiguration {
  ValidatedModel model;
  OptimalSqueezing optimum;
  double gamma_cool = 0.0;
  double n_a = 0.0;
  double n_st = 0.0;
};

/// The purity xi is realized on the cavity side (kappa_a_s = xi kappa_a)
/// with a lossless oscillator. xi == 0 means an unsqueezed drive; s0 is
/// then ignored. Otherwise s0 must exceed 1 - xi.
MatchedConfiguration configure_matched(const OptomechParams& base, double s0,
                                       double xi);

struct DetuningOptimum {
  double delta_opt = 0.0;
  double n_st_min = 0.0;
  bool feasible = false;  // matching feasibility at delta_opt
};

/// Detuning in [delta_lo, delta_hi] that minimizes the steady occupancy of
/// configure_matched(base with that detuning, s0, xi). A 64-point scan
/// brackets the minimum, golden section refines it to `tolerance`.
/// Throws kNoMinimumInWindow when the scan minimum lies on the window edge.
DetuningOptimum optimize_detuning(const OptomechParams& base, double s0,
                                  double xi, double delta_lo, double delta_hi,
                                  double tolerance = 1e-6);

}  // namespace sqzcool
