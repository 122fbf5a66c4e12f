#include "sqzcool/squeezing_spectra.hpp"

#include <cmath>

namespace sqzcool {

namespace {

// xi * chi * kappa_c: common weight of both spectra.
double spectral_weight(const ValidatedModel& model) {
  return model.xi * model.squeezer.chi * model.kappa_c();
}

}  // namespace

TimeCorrelations time_correlations(double tau, const ValidatedModel& model) {
  const double lag = std::abs(tau);
  const double half_weight = 0.5 * spectral_weight(model);
  if (half_weight == 0.0) return {};
  const double slow = std::exp(-model.r_minus * lag) / model.r_minus;
  const double fast = std::exp(-model.r_plus * lag) / model.r_plus;
  return {half_weight * (slow - fast), half_weight * (slow + fast)};
}

double n_tilde(double omega, const ValidatedModel& model) {
  // 1/(r_-^2 + w^2) - 1/(r_+^2 + w^2) with r_+^2 - r_-^2 = 4 chi kappa_c,
  // written without the subtraction.
  const double w2 = omega * omega;
  const double slow = model.r_minus * model.r_minus + w2;
  const double fast = model.r_plus * model.r_plus + w2;
  const double spread = 4.0 * model.squeezer.chi * model.kappa_c();
  return spectral_weight(model) * (spread / slow / fast);
}

double m_tilde(double omega, const ValidatedModel& model) {
  const double w2 = omega * omega;
  const double slow = 1.0 / (model.r_minus * model.r_minus + w2);
  const double fast = 1.0 / (model.r_plus * model.r_plus + w2);
  return spectral_weight(model) * (slow + fast);
}

double input_squeezing_spectrum(double omega, const ValidatedModel& model) {
  // 1 + 2(n - m) with n - m = -2 xi chi kappa_c / (r_+^2 + w^2), written
  // without the subtraction.
  const double w2 = omega * omega;
  return 1.0 - 4.0 * spectral_weight(model) /
                   (model.r_plus * model.r_plus + w2);
}

double force_spectrum(double omega, const ValidatedModel& model) {
  const double kappa = model.kappa_a();
  const double delta = model.delta_a();
  const double lorentz_minus =
      kappa * kappa + (delta - omega) * (delta - omega);
  const double lorentz_plus =
      kappa * kappa + (delta + omega) * (delta + omega);

  const double n = n_tilde(omega, model);
  const double m = m_tilde(omega, model);
  const double two_phi = 2.0 * model.phi();
  const double quadrature =
      (delta * delta - kappa * kappa - omega * omega) * std::cos(two_phi) +
      2.0 * kappa * delta * std::sin(two_phi);

  const double bracket = 1.0 + n * (1.0 + lorentz_minus / lorentz_plus) -
                         2.0 * m * quadrature / lorentz_plus;
  return 2.0 * kappa / lorentz_minus * bracket;
}

SpectraPoint evaluate_spectra(double omega, const ValidatedModel& model) {
  return {omega, n_tilde(omega, model), m_tilde(omega, model),
          input_squeezing_spectrum(omega, model),
          force_spectrum(omega, model)};
}

}  // namespace sqzcool
