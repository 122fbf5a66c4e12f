#include "sqzcool/model_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sqzcool/error.hpp"

namespace sqzcool {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kDomainError,
                std::string(name) + " must be finite");
  }
}

void require_nonnegative(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0) {
    throw Error(ErrorKind::kNegativeInput,
                std::string(name) + " must be >= 0, got " +
                    std::to_string(value));
  }
}

void require_positive_rate(double value, const char* name) {
  if (!(value > 0.0)) {
    throw Error(ErrorKind::kNonPositiveRate,
                std::string(name) + " must be > 0, got " +
                    std::to_string(value));
  }
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kThresholdViolation: return "ThresholdViolation";
    case ErrorKind::kNonPositiveRate: return "NonPositiveRate";
    case ErrorKind::kNegativeInput: return "NegativeInput";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kNotCooling: return "NotCooling";
    case ErrorKind::kInternalInconsistency: return "InternalInconsistency";
    case ErrorKind::kUnstableModel: return "UnstableModel";
    case ErrorKind::kSolverFailure: return "SolverFailure";
    case ErrorKind::kNoMinimumInWindow: return "NoMinimumInWindow";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

double canonical_phase(double phi) {
  double wrapped = std::fmod(phi, std::numbers::pi);
  if (wrapped < 0.0) wrapped += std::numbers::pi;
  // fmod of a value just below a multiple of pi can round up to pi itself.
  if (wrapped >= std::numbers::pi) wrapped = 0.0;
  return wrapped;
}

double loss_factor(double kappa_a_s, double kappa_a_loss, double kappa_c_s,
                   double kappa_c_loss) {
  require_nonnegative(kappa_a_s, "kappa_a_s");
  require_nonnegative(kappa_a_loss, "kappa_a_loss");
  require_nonnegative(kappa_c_s, "kappa_c_s");
  require_nonnegative(kappa_c_loss, "kappa_c_loss");
  const double kappa_a = kappa_a_s + kappa_a_loss;
  const double kappa_c = kappa_c_s + kappa_c_loss;
  require_positive_rate(kappa_a, "kappa_a");
  require_positive_rate(kappa_c, "kappa_c");
  return (kappa_a_s / kappa_a) * (kappa_c_s / kappa_c);
}

ValidatedModel validate(const OptomechParams& optomech,
                        const SqueezerParams& squeezer) {
  require_finite(optomech.omega_m, "omega_m");
  require_positive_rate(optomech.omega_m, "omega_m");
  require_nonnegative(optomech.gamma, "gamma");
  require_positive_rate(optomech.gamma, "gamma");
  require_nonnegative(optomech.n_th, "n_th");
  require_nonnegative(optomech.g, "g");
  require_finite(optomech.delta_a, "delta_a");
  require_nonnegative(squeezer.chi, "chi");
  require_finite(squeezer.phi, "phi");
  const double xi = loss_factor(optomech.kappa_a_s, optomech.kappa_a_loss,
                                squeezer.kappa_c_s, squeezer.kappa_c_loss);

  if (squeezer.chi >= squeezer.kappa_c()) {
    throw Error(ErrorKind::kThresholdViolation,
                "parametric oscillator above threshold: chi = " +
                    std::to_string(squeezer.chi) +
                    " >= kappa_c = " + std::to_string(squeezer.kappa_c()));
  }

  const double unit = optomech.omega_m;
  ValidatedModel model;
  model.frequency_unit = unit;
  model.optomech = optomech;
  model.optomech.omega_m = 1.0;
  model.optomech.gamma /= unit;
  model.optomech.kappa_a_s /= unit;
  model.optomech.kappa_a_loss /= unit;
  model.optomech.delta_a /= unit;
  model.optomech.g /= unit;

  model.squeezer = squeezer;
  model.squeezer.chi /= unit;
  model.squeezer.kappa_c_s /= unit;
  model.squeezer.kappa_c_loss /= unit;
  model.squeezer.phi = canonical_phase(squeezer.phi);

  model.r_plus = model.squeezer.kappa_c() + model.squeezer.chi;
  model.r_minus = model.squeezer.kappa_c() - model.squeezer.chi;
  model.xi = xi;
  return model;
}

SqueezerParams from_observables(double s0, double r_plus, double xi,
                                double phi, double cavity_fraction) {
  if (!(s0 > 0.0 && s0 <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "S(0) must lie in (0, 1]");
  }
  if (!(r_plus > 0.0) || !std::isfinite(r_plus)) {
    throw Error(ErrorKind::kDomainError, "r_plus must be positive");
  }
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "xi must lie in (0, 1]");
  }
  if (!(cavity_fraction >= xi && cavity_fraction <= 1.0)) {
    throw Error(ErrorKind::kDomainError,
                "cavity_fraction must lie in [xi, 1]");
  }
  const double excess = (1.0 - s0) / xi;
  if (excess >= 1.0 - kFeasibilityMargin) {
    throw Error(ErrorKind::kInfeasible,
                "(1 - S(0)) / xi = " + std::to_string(excess) +
                    " >= 1: no below-threshold oscillator gives this "
                    "squeezing at this purity");
  }
  // chi and kappa_c are the roots of t^2 - r_plus t + chi*kappa_c with
  // chi*kappa_c = excess r_plus^2 / 4.
  const double spread = r_plus * std::sqrt(1.0 - excess);
  SqueezerParams out;
  const double kappa_c = 0.5 * (r_plus + spread);
  // kappa_c >= r_plus / 2, so this subtraction is exact and
  // kappa_c + chi reproduces r_plus bit for bit.
  out.chi = r_plus - kappa_c;
  const double split = xi / cavity_fraction;
  out.kappa_c_s = kappa_c * split;
  out.kappa_c_loss = kappa_c - out.kappa_c_s;
  out.phi = canonical_phase(phi);
  return out;
}

}  // namespace sqzcool
