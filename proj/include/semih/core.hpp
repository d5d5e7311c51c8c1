#pragma once

#include <memory>
#include <utility>

#include "semih/errors.hpp"
#include "semih/types.hpp"

namespace semih {

/// Validated decomposition of a positive semidefinite weight A: the whole
/// semi-Hilbert geometry (square root, pseudo-inverse root, range basis,
/// range projector) is derived from one eigendecomposition so every
/// downstream operation sees a consistent range space.
struct WeightGeometry {
    Matrix A;
    RealVector eigvals;   // descending, clamped to >= 0
    Matrix eigvecs;       // unitary, columns ordered with eigvals
    Index rank = 0;       // eigenvalues above rank_tol * max(lambda_max, 1)
    Matrix sqrtA;
    Matrix pinv_sqrtA;
    Matrix range_basis;   // n x r, column-orthonormal
    Matrix projector;     // P = V V*, projects onto range(A)
    double rank_tol = kRankTol;

    Index dim() const { return A.rows(); }
    /// Orthonormal basis of the null space of A (n x (n-r)).
    Matrix null_basis() const { return eigvecs.rightCols(dim() - rank); }
};

WeightGeometry build_geometry(const Matrix& A, double rank_tol = kRankTol);

Complex a_inner(const Vector& x, const Vector& y, const WeightGeometry& geom);
double a_norm_vec(const Vector& x, const WeightGeometry& geom);

struct BoundednessCheck {
    bool bounded = false;
    double residual = 0.0; // max_v |A^{1/2} T v| over the null basis, relative
};

/// In finite dimension T is A-bounded iff it maps null(A) into null(A).
BoundednessCheck is_a_bounded(const Matrix& T, const WeightGeometry& geom,
                              double tol = kBoundTol);

/// Unique solution Q of Tm Q = Um with rows orthogonal to null(Tm).
/// Throws RangeNotIncluded when the least-squares residual shows that
/// range(Um) is not contained in range(Tm).
Matrix reduced_solution(const Matrix& Tm, const Matrix& Um, double tol = 1e-8);

/// An operator bound to a weight geometry. Construction never fails on an
/// unbounded T; operations that need A-boundedness check the stored residual.
struct AOperator {
    Matrix T;
    std::shared_ptr<const WeightGeometry> geom;
    double bounded_residual = 0.0;

    Index dim() const { return T.rows(); }
    bool bounded(double tol = kBoundTol) const { return bounded_residual <= tol; }
    void require_bounded(double tol = kBoundTol) const;
};

AOperator make_a_operator(Matrix T, std::shared_ptr<const WeightGeometry> geom);
AOperator make_a_operator(Matrix T, const Matrix& A, double rank_tol = kRankTol);

/// A-adjoint: the reduced solution S of A X = T* A, so <Tx,y>_A = <x,Sy>_A.
Matrix a_adjoint(const AOperator& op);

/// The two residuals that witness |T|_A = 0: (|ATA| / scale, |T^| / scale).
/// Both are exposed; the module does not pick one as canonical.
std::pair<double, double> seminorm_zero_residuals(const AOperator& op);

} // namespace semih
