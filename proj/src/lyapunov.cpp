#include "sqzcool/lyapunov.hpp"

#include <algorithm>
#include <string>

#include "sqzcool/error.hpp"

namespace sqzcool {

using Eigen::Index;
using Eigen::MatrixXd;

namespace {

MatrixXd kron_identity_left(const MatrixXd& a, Index n) {
  // I_n (x) A
  MatrixXd out = MatrixXd::Zero(n * a.rows(), n * a.cols());
  for (Index k = 0; k < n; ++k) {
    out.block(k * a.rows(), k * a.cols(), a.rows(), a.cols()) = a;
  }
  return out;
}

MatrixXd kron_identity_right(const MatrixXd& b, Index m) {
  // B (x) I_m
  MatrixXd out = MatrixXd::Zero(b.rows() * m, b.cols() * m);
  for (Index i = 0; i < b.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      out.block(i * m, j * m, m, m).diagonal().setConstant(b(i, j));
    }
  }
  return out;
}

}  // namespace

MatrixXd solve_sylvester(const Eigen::Ref<const MatrixXd>& a,
                         const Eigen::Ref<const MatrixXd>& b,
                         const Eigen::Ref<const MatrixXd>& c) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || c.rows() != a.rows() ||
      c.cols() != b.rows()) {
    throw Error(ErrorKind::kDomainError,
                "solve_sylvester(): incompatible matrix shapes");
  }
  const Index m = a.rows();
  const Index n = b.rows();
  const MatrixXd op = kron_identity_left(a, n) +
                      kron_identity_right(b.transpose(), m);
  const Eigen::PartialPivLU<MatrixXd> lu(op);
  // The estimator can miss an exact zero pivot, so take the pivot ratio too.
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double rcond =
      std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
  if (!(rcond > kMinReciprocalCondition)) {
    throw Error(ErrorKind::kSolverFailure,
                "Sylvester operator is ill-conditioned (rcond = " +
                    std::to_string(rcond) + ")");
  }
  MatrixXd rhs = -c;
  const Eigen::VectorXd x =
      lu.solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), m * n));
  return Eigen::Map<const MatrixXd>(x.data(), m, n);
}

MatrixXd solve_lyapunov(const Eigen::Ref<const MatrixXd>& a,
                        const Eigen::Ref<const MatrixXd>& d) {
  MatrixXd v = solve_sylvester(a, a.transpose(), d);
  return 0.5 * (v + v.transpose());
}

MatrixXd solve_cascaded_lyapunov(const Eigen::Ref<const MatrixXd>& a,
                                 const Eigen::Ref<const MatrixXd>& d,
                                 Index upstream) {
  const Index n = a.rows();
  if (upstream <= 0 || upstream >= n) return solve_lyapunov(a, d);
  const Index rest = n - upstream;
  if (!a.topRightCorner(upstream, rest).isZero(0.0)) {
    throw Error(ErrorKind::kDomainError,
                "solve_cascaded_lyapunov(): drift is not block "
                "lower-triangular");
  }
  const MatrixXd a11 = a.topLeftCorner(upstream, upstream);
  const MatrixXd a21 = a.bottomLeftCorner(rest, upstream);
  const MatrixXd a22 = a.bottomRightCorner(rest, rest);

  const MatrixXd v11 = solve_lyapunov(a11, d.topLeftCorner(upstream, upstream));
  const MatrixXd v21 = solve_sylvester(
      a22, a11.transpose(), a21 * v11 + d.bottomLeftCorner(rest, upstream));
  const MatrixXd c22 = a21 * v21.transpose() + v21 * a21.transpose() +
                       d.bottomRightCorner(rest, rest);
  const MatrixXd v22 = solve_lyapunov(a22, c22);

  MatrixXd v(n, n);
  v.topLeftCorner(upstream, upstream) = v11;
  v.bottomLeftCorner(rest, upstream) = v21;
  v.topRightCorner(upstream, rest) = v21.transpose();
  v.bottomRightCorner(rest, rest) = v22;
  return v;
}

double lyapunov_residual(const Eigen::Ref<const MatrixXd>& a,
                         const Eigen::Ref<const MatrixXd>& v,
                         const Eigen::Ref<const MatrixXd>& d) {
  return (a * v + v * a.transpose() + d).norm();
}

}  // namespace sqzcool
