#include "sqzcool/cascade_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "sqzcool/error.hpp"
#include "sqzcool/lyapunov.hpp"

namespace sqzcool {

namespace {

using Complex = std::complex<double>;
using Matrix2d = Eigen::Matrix2d;
using ComplexMatrix6d = Eigen::Matrix<Complex, 6, 6>;

constexpr Eigen::Index kUpstreamStates = 2;
constexpr double kResidualTolerance = 1e-10;

// <w w^T> for one bosonic port with <o o^dagger> = n + 1.
Eigen::Matrix<Complex, 2, 2> port_correlation(double occupation) {
  Eigen::Matrix<Complex, 2, 2> out;
  out << Complex(occupation + 0.5, 0.0), Complex(0.0, 0.5),
      Complex(0.0, -0.5), Complex(occupation + 0.5, 0.0);
  return out;
}

// Quadratures of exp(-i phi) o in terms of those of o.
Matrix2d phase_rotation(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Matrix2d out;
  out << c, s, -s, c;
  return out;
}

void require_stable(double margin) {
  if (!(margin < 0.0)) {
    throw Error(ErrorKind::kUnstableModel,
                "drift has an eigenvalue with real part " +
                    std::to_string(margin) + " >= 0");
  }
}

// Noise spectral matrix H N H^dagger of the state at frequency omega, with
// H = (-i omega - A)^-1 for the transform  int dt e^{i omega t} <x(t) x(0)>.
ComplexMatrix6d state_transfer(double omega, const Matrix6d& drift) {
  ComplexMatrix6d resolvent =
      Complex(0.0, -omega) * ComplexMatrix6d::Identity() -
      drift.cast<Complex>();
  return resolvent.partialPivLu().inverse();
}

}  // namespace

LinearGaussianModel build_model(const ValidatedModel& model) {
  const auto& om = model.optomech;
  const auto& sq = model.squeezer;
  LinearGaussianModel out;
  out.phi = sq.phi;
  auto& a = out.drift;
  auto& b = out.input_map;
  a.setZero();
  b.setZero();

  // Parametric oscillator: dc/dt = -kappa_c c + chi c^dagger + noise.
  a(kXc, kXc) = -sq.kappa_c() + sq.chi;
  a(kYc, kYc) = -sq.kappa_c() - sq.chi;
  b.block<2, 2>(kXc, kSqueezerPort) =
      std::sqrt(2.0 * sq.kappa_c_s) * Matrix2d::Identity();
  b.block<2, 2>(kXc, kSqueezerLossPort) =
      std::sqrt(2.0 * sq.kappa_c_loss) * Matrix2d::Identity();

  // Cavity in the frame of the drive.
  const double kappa = om.kappa_a();
  a.block<2, 2>(kXa, kXa) << -kappa, om.delta_a, -om.delta_a, -kappa;
  const Matrix2d rotation = phase_rotation(sq.phi);
  const double cavity_port = std::sqrt(2.0 * om.kappa_a_s);
  const double squeezer_port = std::sqrt(2.0 * sq.kappa_c_s);
  a.block<2, 2>(kXa, kXc) = cavity_port * squeezer_port * rotation;
  b.block<2, 2>(kXa, kSqueezerPort) = -cavity_port * rotation;
  b.block<2, 2>(kXa, kCavityLossPort) =
      std::sqrt(2.0 * om.kappa_a_loss) * Matrix2d::Identity();

  // Mechanics and the radiation-pressure coupling iG(a + a^dagger)(b + b^dagger).
  a.block<2, 2>(kXb, kXb) << -0.5 * om.gamma, om.omega_m, -om.omega_m,
      -0.5 * om.gamma;
  a(kYa, kXb) = 2.0 * om.g;
  a(kYb, kXa) = 2.0 * om.g;
  b.block<2, 2>(kXb, kThermalPort) =
      std::sqrt(om.gamma) * Matrix2d::Identity();

  out.input_correlation.setZero();
  out.input_correlation.block<2, 2>(kSqueezerPort, kSqueezerPort) =
      port_correlation(0.0);
  out.input_correlation.block<2, 2>(kSqueezerLossPort, kSqueezerLossPort) =
      port_correlation(0.0);
  out.input_correlation.block<2, 2>(kCavityLossPort, kCavityLossPort) =
      port_correlation(0.0);
  out.input_correlation.block<2, 2>(kThermalPort, kThermalPort) =
      port_correlation(om.n_th);

  const Eigen::Matrix<Complex, 6, 6> noise =
      b.cast<Complex>() * out.input_correlation * b.transpose().cast<Complex>();
  out.diffusion = noise.real();
  out.diffusion = 0.5 * (out.diffusion + out.diffusion.transpose()).eval();

  // a_in = (sqrt(kappa_a_s) e^{-i phi} c_out + sqrt(kappa_a_loss) a_loss) /
  // sqrt(kappa_a).
  const double squeezed_share = std::sqrt(om.kappa_a_s / kappa);
  out.feed_state.setZero();
  out.feed_input.setZero();
  out.feed_state.block<2, 2>(0, kXc) =
      squeezed_share * squeezer_port * rotation;
  out.feed_input.block<2, 2>(0, kSqueezerPort) = -squeezed_share * rotation;
  out.feed_input.block<2, 2>(0, kCavityLossPort) =
      std::sqrt(om.kappa_a_loss / kappa) * Matrix2d::Identity();

  require_stable(stability_margin(out.drift));
  return out;
}

double stability_margin(const Matrix6d& drift) {
  const Eigen::EigenSolver<Matrix6d> solver(drift, false);
  return solver.eigenvalues().real().maxCoeff();
}

OracleResult solve_steady_state(const LinearGaussianModel& model) {
  OracleResult out;
  out.stability_margin = stability_margin(model.drift);
  require_stable(out.stability_margin);
  out.covariance = solve_cascaded_lyapunov(model.drift, model.diffusion,
                                           kUpstreamStates);
  out.residual =
      lyapunov_residual(model.drift, out.covariance, model.diffusion);
  const double scale = model.diffusion.norm();
  if (out.residual > kResidualTolerance * scale) {
    throw Error(ErrorKind::kSolverFailure,
                "Lyapunov residual " + std::to_string(out.residual) +
                    " exceeds 1e-10 ||D|| = " +
                    std::to_string(kResidualTolerance * scale));
  }
  out.phonon_number =
      0.5 * (out.covariance(kXb, kXb) + out.covariance(kYb, kYb)) - 0.5;
  return out;
}

double physicality_margin(const Matrix6d& covariance) {
  ComplexMatrix6d state = covariance.cast<Complex>();
  for (Eigen::Index k = 0; k < 6; k += 2) {
    state(k, k + 1) += Complex(0.0, 0.5);
    state(k + 1, k) -= Complex(0.0, 0.5);
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix6d> solver(
      state, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double oracle_force_spectrum(double omega, const LinearGaussianModel& model) {
  if (model.drift(kYa, kXb) != 0.0 || model.drift(kYb, kXa) != 0.0) {
    throw Error(ErrorKind::kDomainError,
                "force spectrum oracle needs an uncoupled cavity (g = 0)");
  }
  const ComplexMatrix6d transfer = state_transfer(omega, model.drift);
  // Row of H B that produces X_a.
  const Eigen::Matrix<Complex, 1, 8> row =
      transfer.row(kXa) * model.input_map.cast<Complex>();
  const Complex value = row * model.input_correlation * row.adjoint();
  // a + a^dagger = sqrt(2) X_a.
  return 2.0 * value.real();
}

double oracle_force_spectrum(double omega, const ValidatedModel& model) {
  if (model.optomech.g != 0.0) {
    throw Error(ErrorKind::kDomainError,
                "force spectrum oracle needs an uncoupled cavity (g = 0)");
  }
  return oracle_force_spectrum(omega, build_model(model));
}

double oracle_squeezing_spectrum(double omega,
                                 const LinearGaussianModel& model) {
  const ComplexMatrix6d transfer = state_transfer(omega, model.drift);
  const Eigen::Matrix<Complex, 2, 8> feed =
      model.feed_state.cast<Complex>() * transfer *
          model.input_map.cast<Complex>() +
      model.feed_input.cast<Complex>();
  // a_in e^{i(pi/2 + phi)} + h.c. = sqrt(2) (-sin(phi) X - cos(phi) Y).
  Eigen::Matrix<Complex, 1, 2> quadrature;
  quadrature << -std::sqrt(2.0) * std::sin(model.phi),
      -std::sqrt(2.0) * std::cos(model.phi);
  const Eigen::Matrix<Complex, 1, 8> row = quadrature * feed;
  const Complex value = row * model.input_correlation * row.adjoint();
  return value.real();
}

double oracle_phonon_number(const ValidatedModel& model) {
  return solve_steady_state(build_model(model)).phonon_number;
}

void write_matrix_csv(std::ostream& out,
                      const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  char buffer[32];
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", matrix(i, j));
      if (j > 0) out << ',';
      out << buffer;
    }
    out << '\n';
  }
}

void write_oracle_matrices(const std::filesystem::path& directory,
                           const LinearGaussianModel& model,
                           const OracleResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  const auto write = [&](const char* name, const Eigen::MatrixXd& matrix) {
    std::ofstream file(directory / name);
    if (!file) {
      throw Error(ErrorKind::kIoError,
                  "cannot write " + (directory / name).string());
    }
    write_matrix_csv(file, matrix);
    if (!file) {
      throw Error(ErrorKind::kIoError,
                  "failed writing " + (directory / name).string());
    }
  };
  write("drift.csv", model.drift);
  write("diffusion.csv", model.diffusion);
  write("covariance.csv", result.covariance);
}

}  // namespace sqzcool
