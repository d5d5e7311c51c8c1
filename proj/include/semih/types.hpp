#pragma once

#include <complex>
#include <Eigen/Dense>

namespace semih {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default tolerances, pinned once so every module agrees on them.
inline constexpr double kRankTol = 1e-10;         // relative eigenvalue cutoff for rank(A)
inline constexpr double kBoundTol = 1e-8;         // A-boundedness residual threshold
inline constexpr double kClusterTol = 1e-8;       // relative width of the top singular cluster
inline constexpr double kMembershipTol = 1e-7;    // geometric slack, relative
inline constexpr double kEqualityTol = 1e-6;      // identity checks, relative
inline constexpr double kCenterGapTol = 1e-7;     // certified suboptimality of c_A, scaled by (1 + |T|_A)
inline constexpr int kGridK = 720;                // default angle grid
inline constexpr double kInconclusiveBand = 10.0; // gray zone multiplier for verdicts

bool is_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// Decision margins are measured relative to the operator seminorm so that
/// verdicts are invariant under T -> sT; the floor only covers the exactly
/// degenerate seminorm, where every quantity is identically zero.
inline double decision_scale(double norm_a) {
    return norm_a > 1e-300 ? norm_a : 1.0;
}

/// Conjugate transpose; spelled out because it appears in every formula here.
inline Matrix adjoint(const Matrix& m) { return m.adjoint(); }

/// Frobenius norm used as the generic matrix scale.
inline double frob(const Matrix& m) { return m.norm(); }

} // namespace semih
