#include "sqzcool/cooling_rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqzcool/error.hpp"
#include "sqzcool/squeezing_spectra.hpp"

namespace sqzcool {

namespace {

constexpr double kRateAgreement = 1e-10;

void require_cooling(double gamma_cool) {
  if (!(gamma_cool > 0.0)) {
    throw Error(ErrorKind::kNotCooling,
                "cooling rate Gamma = " + std::to_string(gamma_cool) +
                    " is not positive (need red detuning delta_a > 0 and "
                    "g > 0)");
  }
}

}  // namespace

ScatteringRates scattering_rates(const ValidatedModel& model) {
  const double g2 = model.optomech.g * model.optomech.g;
  const double w = model.omega_m();
  return {g2 * force_spectrum(-w, model), g2 * force_spectrum(w, model)};
}

double cooling_rate_closed_form(const ValidatedModel& model) {
  const double kappa = model.kappa_a();
  const double delta = model.delta_a();
  const double w = model.omega_m();
  const double g2 = model.optomech.g * model.optomech.g;
  return 2.0 * kappa * g2 *
         (1.0 / (kappa * kappa + (delta - w) * (delta - w)) -
          1.0 / (kappa * kappa + (delta + w) * (delta + w)));
}

double cooling_rate(const ValidatedModel& model) {
  const double closed = cooling_rate_closed_form(model);
  const auto rates = scattering_rates(model);
  const double spectral = rates.a_minus - rates.a_plus;
  const double scale = rates.a_minus + rates.a_plus;
  if (std::abs(spectral - closed) > kRateAgreement * scale) {
    throw Error(ErrorKind::kInternalInconsistency,
                "spectral cooling rate " + std::to_string(spectral) +
                    " disagrees with closed form " + std::to_string(closed));
  }
  return closed;
}

double sideband_asymmetry(const ValidatedModel& model) {
  const double kappa = model.kappa_a();
  const double delta = model.delta_a();
  const double w = model.omega_m();
  return std::sqrt((kappa * kappa + (delta - w) * (delta - w)) /
                   (kappa * kappa + (delta + w) * (delta + w)));
}

double standard_backaction_limit(const ValidatedModel& model) {
  const double delta = model.delta_a();
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::kDomainError,
                "N_0 is defined for delta_a > 0 only");
  }
  const double kappa = model.kappa_a();
  const double w = model.omega_m();
  return (kappa * kappa + (delta - w) * (delta - w)) / (4.0 * delta * w);
}

double backaction_limit(const ValidatedModel& model) {
  const double gamma_cool = cooling_rate(model);
  require_cooling(gamma_cool);
  return scattering_rates(model).a_plus / gamma_cool;
}

double backaction_limit_at_optimal_phase(const ValidatedModel& model) {
  const double n0 = standard_backaction_limit(model);
  const double zeta = sideband_asymmetry(model);
  const double n = n_tilde(model.omega_m(), model);
  const double m = m_tilde(model.omega_m(), model);
  return n0 * (1.0 + n * (1.0 + 1.0 / (zeta * zeta)) - 2.0 * m / zeta);
}

double mix_occupancy(double gamma, double n_th, double gamma_cool,
                     double n_a) {
  return (gamma * n_th + gamma_cool * n_a) / (gamma + gamma_cool);
}

double steady_state(const ValidatedModel& model) {
  if (model.optomech.g == 0.0) return model.optomech.n_th;
  return mix_occupancy(model.optomech.gamma, model.optomech.n_th,
                       cooling_rate(model), backaction_limit(model));
}

ApproxSteadyState approx_steady_state(const ValidatedModel& model) {
  ApproxSteadyState out;
  const double g = model.optomech.g;
  out.cooperativity = 2.0 * g * g / (model.optomech.gamma * model.kappa_a());
  const double thermal = out.cooperativity > 0.0
                             ? model.optomech.n_th / out.cooperativity
                             : std::numeric_limits<double>::infinity();
  out.n_st = thermal + standard_backaction_limit(model) * (1.0 - model.xi);
  out.off_sideband = std::abs(model.delta_a() - model.omega_m()) > 1e-9;
  return out;
}

double phonon_evolution(double t, double n_initial,
                        const ValidatedModel& model) {
  const double n_st = steady_state(model);
  const double rate = model.optomech.gamma + cooling_rate(model);
  return n_st + (n_initial - n_st) * std::exp(-rate * t);
}

CoolingDiagnostics diagnose(const ValidatedModel& model) {
  CoolingDiagnostics out;
  const double g = model.optomech.g;
  if (g > 0.0) {
    out.coupling_ratio = std::max(
        {model.optomech.gamma / g, g / model.r_minus, g / model.r_plus,
         g / model.kappa_a(), g / model.omega_m()});
  }
  out.weak_coupling_violated = out.coupling_ratio > kWeakCouplingRatio;
  out.off_sideband = std::abs(model.delta_a() - model.omega_m()) > 1e-9;
  return out;
}

CoolingReport cooling_report(const ValidatedModel& model) {
  CoolingReport report;
  const auto rates = scattering_rates(model);
  report.a_plus = rates.a_plus;
  report.a_minus = rates.a_minus;
  report.gamma_cool = cooling_rate(model);
  require_cooling(report.gamma_cool);
  report.zeta = sideband_asymmetry(model);
  report.n0 = standard_backaction_limit(model);
  report.n_a = report.a_plus / report.gamma_cool;
  report.n_st = mix_occupancy(model.optomech.gamma, model.optomech.n_th,
                              report.gamma_cool, report.n_a);
  const auto approx = approx_steady_state(model);
  report.n_st_approx = approx.n_st;
  report.cooperativity = approx.cooperativity;
  report.diagnostics = diagnose(model);
  return report;
}

}  // namespace sqzcool
