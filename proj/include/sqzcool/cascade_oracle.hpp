#pragma once

#include <complex>
#include <filesystem>
#include <ostream>

#include <Eigen/Dense>

#include "sqzcool/model_params.hpp"

namespace sqzcool {

/// Quadrature ordering of the cascaded oscillator -> cavity <-> mechanics
/// system, X = (o + o^dagger)/sqrt(2), Y = -i(o - o^dagger)/sqrt(2). Vacuum
/// variance is 1/2 in this convention.
enum Quadrature : Eigen::Index {
  kXc = 0, kYc, kXa, kYa, kXb, kYb,
};

/// Independent white-noise inputs, each contributing an (X, Y) pair:
/// oscillator controlled port, oscillator loss port, cavity loss port,
/// mechanical bath.
enum InputPort : Eigen::Index {
  kSqueezerPort = 0, kSqueezerLossPort = 2, kCavityLossPort = 4,
  kThermalPort = 6,
};

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using InputMap = Eigen::Matrix<double, 6, 8>;
using InputCorrelation = Eigen::Matrix<std::complex<double>, 8, 8>;

/// dx/dt = drift x + input_map w with <w(t) w(t')^T> = input_correlation
/// delta(t - t'). diffusion is the symmetric part of the resulting noise.
struct LinearGaussianModel {
  Matrix6d drift;
  Matrix6d diffusion;
  InputMap input_map;
  InputCorrelation input_correlation;
  // Cavity input field (X, Y) = feed_state x + feed_input w; used to read
  // off the squeezing that actually reaches the cavity.
  Eigen::Matrix<double, 2, 6> feed_state;
  Eigen::Matrix<double, 2, 8> feed_input;
  double phi = 0.0;
};

/// Linearized cascade for a validated model. The oscillator output
/// sqrt(2 kappa_c_s) c - c_in_s, rotated by exp(-i phi), enters the cavity
/// through its kappa_a_s port. Throws kUnstableModel if any drift eigenvalue
/// has a nonnegative real part.
LinearGaussianModel build_model(const ValidatedModel& model);

/// Largest real part among the drift eigenvalues.
double stability_margin(const Matrix6d& drift);

struct OracleResult {
  Matrix6d covariance;
  double phonon_number = 0.0;
  double stability_margin = 0.0;
  double residual = 0.0;  // Frobenius norm of the Lyapunov residual
};

/// Symmetrized steady covariance from A V + V A^T + D = 0, solved blockwise
/// with the oscillator upstream. Throws kUnstableModel, or kSolverFailure
/// on ill-conditioning or a residual above 1e-10 ||D||.
OracleResult solve_steady_state(const LinearGaussianModel& model);

/// Smallest eigenvalue of V + i Omega / 2; nonnegative for physical states.
double physicality_margin(const Matrix6d& covariance);

/// Stationary non-symmetrized spectrum of a + a^dagger at frequency omega
/// for an uncoupled cavity. Throws kDomainError unless g == 0.
double oracle_force_spectrum(double omega, const ValidatedModel& model);
double oracle_force_spectrum(double omega, const LinearGaussianModel& model);

/// Spectrum of the maximally squeezed quadrature of the field entering the
/// cavity.
double oracle_squeezing_spectrum(double omega,
                                 const LinearGaussianModel& model);

/// Oracle phonon number for a validated model.
double oracle_phonon_number(const ValidatedModel& model);

/// Row-major CSV, 17 significant digits.
void write_matrix_csv(std::ostream& out,
                      const Eigen::Ref<const Eigen::MatrixXd>& matrix);
void write_oracle_matrices(const std::filesystem::path& directory,
                           const LinearGaussianModel& model,
                           const OracleResult& result);

}  // namespace sqzcool
