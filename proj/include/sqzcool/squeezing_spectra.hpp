#pragma once

#include "sqzcool/model_params.hpp"

namespace sqzcool {

/// Normally ordered (n) and anomalous (|m|) correlations of the cavity input
/// at time lag tau, already scaled by the purity xi. The phase factor
/// exp(-2i phi) of the anomalous correlation is left to the caller.
struct TimeCorrelations {
  double n = 0.0;
  double m_magnitude = 0.0;
};

TimeCorrelations time_correlations(double tau, const ValidatedModel& model);

/// Fourier transforms of the correlations above, even in omega.
double n_tilde(double omega, const ValidatedModel& model);
double m_tilde(double omega, const ValidatedModel& model);

/// Spectrum of the maximally squeezed input quadrature, 1 + 2n - 2m.
double input_squeezing_spectrum(double omega, const ValidatedModel& model);

/// Power spectrum of the intracavity amplitude quadrature a + a^dagger
/// (the radiation-pressure force) for an empty cavity driven by the
/// squeezed field. Positive omega corresponds to anti-Stokes scattering.
double force_spectrum(double omega, const ValidatedModel& model);

struct SpectraPoint {
  double omega = 0.0;
  double n_tilde = 0.0;
  double m_tilde = 0.0;
  double s_in = 1.0;
  double s_force = 0.0;
};

SpectraPoint evaluate_spectra(double omega, const ValidatedModel& model);

}  // namespace sqzcool
