#pragma once

#include <Eigen/Dense>

namespace sqzcool {

/// Reciprocal condition estimate below which a dense solve is rejected.
inline constexpr double kMinReciprocalCondition = 1e-12;

/// Solves A X + X B + C = 0 by vectorization,
/// (I (x) A + B^T (x) I) vec(X) = -vec(C), with a partially pivoted LU.
/// Throws kSolverFailure when the Kronecker operator is ill-conditioned.
Eigen::MatrixXd solve_sylvester(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                const Eigen::Ref<const Eigen::MatrixXd>& b,
                                const Eigen::Ref<const Eigen::MatrixXd>& c);

/// Continuous Lyapunov equation A V + V A^T + D = 0.
Eigen::MatrixXd solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& a,
                               const Eigen::Ref<const Eigen::MatrixXd>& d);

/// Same equation for a block lower-triangular drift
///
///   A = [A11  0 ]
///       [A21 A22]
///
/// whose leading `upstream` states are not driven by the rest. The leading
/// block of V is solved on its own, then the coupling and trailing blocks
/// follow as Sylvester equations, so V11 depends only on A11 and D11.
Eigen::MatrixXd solve_cascaded_lyapunov(
    const Eigen::Ref<const Eigen::MatrixXd>& a,
    const Eigen::Ref<const Eigen::MatrixXd>& d, Eigen::Index upstream);

/// Frobenius norm of A V + V A^T + D.
double lyapunov_residual(const Eigen::Ref<const Eigen::MatrixXd>& a,
                         const Eigen::Ref<const Eigen::MatrixXd>& v,
                         const Eigen::Ref<const Eigen::MatrixXd>& d);

}  // namespace sqzcool
