#include "sqzcool/optimizer.hpp"

#include <cmath>
#include <string>

#include "sqzcool/cooling_rates.hpp"
#include "sqzcool/error.hpp"
#include "sqzcool/golden_section.hpp"

namespace sqzcool {

namespace {

constexpr std::size_t kBracketPoints = 64;

double asymmetry(double delta_a, double kappa_a, double omega_m) {
  return std::sqrt(
      (kappa_a * kappa_a + (delta_a - omega_m) * (delta_a - omega_m)) /
      (kappa_a * kappa_a + (delta_a + omega_m) * (delta_a + omega_m)));
}

double unsqueezed_limit(double delta_a, double kappa_a, double omega_m) {
  return (kappa_a * kappa_a + (delta_a - omega_m) * (delta_a - omega_m)) /
         (4.0 * delta_a * omega_m);
}

void check_geometry(double delta_a, double kappa_a, double omega_m) {
  if (!(delta_a > 0.0) || !std::isfinite(delta_a)) {
    throw Error(ErrorKind::kDomainError,
                "optimal squeezing needs red detuning delta_a > 0");
  }
  if (!(kappa_a > 0.0) || !(omega_m > 0.0)) {
    throw Error(ErrorKind::kDomainError,
                "kappa_a and omega_m must be positive");
  }
}

void check_squeezing(double s0, double xi) {
  if (!(s0 > 0.0 && s0 <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "S(0) must lie in (0, 1]");
  }
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "xi must lie in (0, 1]");
  }
  if (s0 - 1.0 + xi <= 0.0) {
    throw Error(ErrorKind::kDomainError,
                "S(0) = " + std::to_string(s0) + " <= 1 - xi cannot be "
                "reached by a drive of purity xi = " + std::to_string(xi));
  }
}

}  // namespace

double optimal_phase(double delta_a, double kappa_a, double omega_m) {
  if (!(delta_a > 0.0)) {
    throw Error(ErrorKind::kDomainError,
                "optimal phase is defined for delta_a > 0");
  }
  const double angle =
      std::atan2(2.0 * delta_a * kappa_a,
                 delta_a * delta_a - omega_m * omega_m - kappa_a * kappa_a);
  return canonical_phase(0.5 * angle);
}

double matching_threshold(double xi, double delta_a, double kappa_a,
                          double omega_m) {
  const double zeta = asymmetry(delta_a, kappa_a, omega_m);
  return 1.0 - 2.0 * xi * zeta / (1.0 + zeta);
}

double infinite_bandwidth_backaction(double s0, double xi, double delta_a,
                                     double kappa_a, double omega_m) {
  check_geometry(delta_a, kappa_a, omega_m);
  check_squeezing(s0, xi);
  const double zeta = asymmetry(delta_a, kappa_a, omega_m);
  const double excess = 1.0 - s0;
  const double inv = 1.0 + 1.0 / zeta;
  const double bracket = 0.25 * excess * inv * inv - xi / zeta;
  return unsqueezed_limit(delta_a, kappa_a, omega_m) *
         (1.0 + excess / (s0 - 1.0 + xi) * bracket);
}

OptimalSqueezing matched_bandwidth(double s0, double xi, double delta_a,
                                   double kappa_a, double omega_m) {
  check_geometry(delta_a, kappa_a, omega_m);
  check_squeezing(s0, xi);
  OptimalSqueezing out;
  out.phi_opt = optimal_phase(delta_a, kappa_a, omega_m);
  out.s0_threshold = matching_threshold(xi, delta_a, kappa_a, omega_m);

  const double zeta = asymmetry(delta_a, kappa_a, omega_m);
  // omega_m^2 / r_+^2
  const double rhs = (1.0 - s0) * (1.0 + zeta) / (2.0 * xi * zeta) - 1.0;
  const bool realizable = (1.0 - s0) / xi < 1.0 - kFeasibilityMargin;
  if (rhs > kFeasibilityMargin && realizable) {
    out.feasible = true;
    out.r_plus_matched = omega_m / std::sqrt(rhs);
    out.n_a_predicted = unsqueezed_limit(delta_a, kappa_a, omega_m) *
                        (1.0 - xi);
  } else {
    out.n_a_predicted =
        infinite_bandwidth_backaction(s0, xi, delta_a, kappa_a, omega_m);
  }
  return out;
}

MatchedConfiguration configure_matched(const OptomechParams& base, double s0,
                                       double xi) {
  const double unit = base.omega_m;
  const double kappa = base.kappa_a() / unit;
  const double delta = base.delta_a / unit;
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "xi must lie in [0, 1]");
  }

  OptomechParams optomech = base;
  optomech.kappa_a_s = xi * base.kappa_a();
  optomech.kappa_a_loss = base.kappa_a() - optomech.kappa_a_s;

  MatchedConfiguration out;
  SqueezerParams squeezer;
  if (xi == 0.0) {
    // Nothing reaches the cavity from the oscillator; keep a quiet one.
    check_geometry(delta, kappa, 1.0);
    out.optimum.phi_opt = optimal_phase(delta, kappa);
    out.optimum.s0_threshold = 1.0;
    out.optimum.n_a_predicted = unsqueezed_limit(delta, kappa, 1.0);
    squeezer.chi = 0.0;
    squeezer.kappa_c_s = unit;
    squeezer.phi = out.optimum.phi_opt;
  } else {
    out.optimum = matched_bandwidth(s0, xi, delta, kappa);
    const double r_plus =
        out.optimum.r_plus_matched.value_or(kInfiniteBandwidthProxy);
    squeezer = from_observables(s0, r_plus * unit, xi, out.optimum.phi_opt,
                                xi);
  }
  out.model = validate(optomech, squeezer);
  out.gamma_cool = cooling_rate(out.model);
  out.n_a = out.optimum.feasible || xi == 0.0 ? backaction_limit(out.model)
                                              : out.optimum.n_a_predicted;
  out.n_st = mix_occupancy(out.model.optomech.gamma, out.model.optomech.n_th,
                           out.gamma_cool, out.n_a);
  return out;
}

DetuningOptimum optimize_detuning(const OptomechParams& base, double s0,
                                  double xi, double delta_lo, double delta_hi,
                                  double tolerance) {
  if (!(delta_lo > 0.0 && delta_hi > delta_lo)) {
    throw Error(ErrorKind::kDomainError,
                "detuning window must satisfy 0 < lo < hi");
  }
  auto occupancy = [&](double delta) {
    OptomechParams trial = base;
    trial.delta_a = delta;
    return configure_matched(trial, s0, xi).n_st;
  };
  const Bracket bracket =
      bracket_scan(occupancy, delta_lo, delta_hi, kBracketPoints);
  if (!bracket.interior) {
    throw Error(ErrorKind::kNoMinimumInWindow,
                "occupancy is minimal at the window edge delta_a = " +
                    std::to_string(bracket.best));
  }
  double delta_opt =
      golden_section_minimize(occupancy, bracket.lo, bracket.hi, tolerance);
  double value = occupancy(delta_opt);
  if (bracket.best_value < value) {
    delta_opt = bracket.best;
    value = bracket.best_value;
  }
  OptomechParams at_opt = base;
  at_opt.delta_a = delta_opt;
  const auto config = configure_matched(at_opt, s0, xi);
  return {delta_opt, value, config.optimum.feasible};
}

}  // namespace sqzcool
