#include "semih/core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "semih/detail/optim.hpp"

namespace semih {

bool is_finite(const Matrix& m) {
    return m.allFinite();
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, frob(m));
    return frob(Matrix(m - m.adjoint())) <= tol * scale;
}

WeightGeometry build_geometry(const Matrix& A, double rank_tol) {
    if (A.rows() != A.cols()) throw DimMismatch("weight matrix must be square");
    if (!is_finite(A)) throw Error("weight matrix has non-finite entries");
    const double scale = frob(A);
    if (scale == 0.0) throw ZeroWeight("weight A = 0 is excluded");
    if (!is_hermitian(A, 1e-10)) throw NotHermitian("weight matrix is not Hermitian");

    // Work on the Hermitian average so roundoff asymmetry cannot leak into
    // the eigendecomposition.
    const Matrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
    if (eig.info() != Eigen::Success) throw EigFailure("eigendecomposition of the weight failed");

    const Index n = A.rows();
    WeightGeometry g;
    g.A = A;
    g.rank_tol = rank_tol;
    g.eigvals.resize(n);
    g.eigvecs.resize(n, n);
    // Descending order, stable across ties so that an identity weight keeps
    // the standard basis and the reduced operator of (T, I) is T itself.
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return eig.eigenvalues()[a] > eig.eigenvalues()[b];
    });
    for (Index i = 0; i < n; ++i) {
        g.eigvals[i] = eig.eigenvalues()[order[i]];
        g.eigvecs.col(i) = eig.eigenvectors().col(order[i]);
    }

    const double lmax = std::max(g.eigvals[0], 0.0);
    if (g.eigvals[n - 1] < -rank_tol * std::max(lmax, 1.0))
        throw NotPositive("weight matrix has a negative eigenvalue beyond tolerance");
    // Clamp tolerated negative noise before taking square roots.
    for (Index i = 0; i < n; ++i) g.eigvals[i] = std::max(g.eigvals[i], 0.0);

    const double cut = rank_tol * std::max(lmax, 1.0);
    g.rank = 0;
    while (g.rank < n && g.eigvals[g.rank] > cut) ++g.rank;
    if (g.rank == 0) throw ZeroWeight("weight A = 0 within rank tolerance");

    RealVector roots(n), inv_roots(n);
    for (Index i = 0; i < n; ++i) {
        roots[i] = std::sqrt(g.eigvals[i]);
        inv_roots[i] = i < g.rank ? 1.0 / roots[i] : 0.0;
    }
    g.sqrtA = g.eigvecs * roots.asDiagonal() * g.eigvecs.adjoint();
    g.pinv_sqrtA = g.eigvecs * inv_roots.asDiagonal() * g.eigvecs.adjoint();
    g.range_basis = g.eigvecs.leftCols(g.rank);
    g.projector = g.range_basis * g.range_basis.adjoint();
    return g;
}

Complex a_inner(const Vector& x, const Vector& y, const WeightGeometry& geom) {
    if (x.size() != geom.dim() || y.size() != geom.dim())
        throw DimMismatch("vector dimension does not match the weight");
    return (y.adjoint() * (geom.A * x))(0, 0);
}

double a_norm_vec(const Vector& x, const WeightGeometry& geom) {
    if (x.size() != geom.dim())
        throw DimMismatch("vector dimension does not match the weight");
    const double sq = std::real((x.adjoint() * (geom.A * x))(0, 0));
    return std::sqrt(std::max(sq, 0.0));
}

BoundednessCheck is_a_bounded(const Matrix& T, const WeightGeometry& geom, double tol) {
    if (T.rows() != T.cols() || T.rows() != geom.dim())
        throw DimMismatch("operator dimension does not match the weight");
    BoundednessCheck out;
    if (geom.rank == geom.dim()) {
        out.bounded = true;
        return out;
    }
    const Matrix nb = geom.null_basis();
    const Matrix image = geom.sqrtA * (T * nb);
    const double scale = std::sqrt(geom.eigvals[0]) * (1.0 + frob(T));
    double worst = 0.0;
    for (Index j = 0; j < image.cols(); ++j)
        worst = std::max(worst, image.col(j).norm());
    out.residual = worst / scale;
    out.bounded = out.residual <= tol;
    return out;
}

Matrix reduced_solution(const Matrix& Tm, const Matrix& Um, double tol) {
    if (Tm.rows() != Um.rows()) throw DimMismatch("row counts differ in Tm X = Um");
    Eigen::JacobiSVD<Matrix> svd(Tm, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(Eigen::NumTraits<double>::epsilon() * Tm.rows());
    const Matrix Q = svd.solve(Um);
    const double residual = frob(Matrix(Tm * Q - Um));
    if (residual > tol * std::max(frob(Um), 1e-300))
        throw RangeNotIncluded("range(Um) is not contained in range(Tm)");
    return Q;
}

void AOperator::require_bounded(double tol) const {
    if (!bounded(tol))
        throw NotABounded("operator does not map null(A) into null(A); residual " +
                          std::to_string(bounded_residual));
}

AOperator make_a_operator(Matrix T, std::shared_ptr<const WeightGeometry> geom) {
    if (T.rows() != T.cols() || T.rows() != geom->dim())
        throw DimMismatch("operator dimension does not match the weight");
    if (!is_finite(T)) throw Error("operator matrix has non-finite entries");
    AOperator op;
    op.bounded_residual = is_a_bounded(T, *geom, kBoundTol).residual;
    op.T = std::move(T);
    op.geom = std::move(geom);
    return op;
}

AOperator make_a_operator(Matrix T, const Matrix& A, double rank_tol) {
    auto geom = std::make_shared<WeightGeometry>(build_geometry(A, rank_tol));
    return make_a_operator(std::move(T), std::move(geom));
}

Matrix a_adjoint(const AOperator& op) {
    op.require_bounded();
    const auto& g = *op.geom;
    const Matrix S = reduced_solution(g.A, Matrix(op.T.adjoint() * g.A), 1e-8);

    // Sanity-check the defining identity <Tx,y>_A = <x,Sy>_A on a few
    // deterministic probes.
    detail::Rng rng(0x5eed0adu);
    const double scale = (1.0 + frob(op.T)) * (1.0 + frob(g.A));
    for (int k = 0; k < 8; ++k) {
        const Vector x = rng.gaussian_vector(g.dim());
        const Vector y = rng.gaussian_vector(g.dim());
        const Complex lhs = a_inner(Vector(op.T * x), y, g);
        const Complex rhs = a_inner(x, Vector(S * y), g);
        if (std::abs(lhs - rhs) > 1e-8 * scale)
            throw Error("A-adjoint verification failed on a probe vector");
    }
    return S;
}

std::pair<double, double> seminorm_zero_residuals(const AOperator& op) {
    const auto& g = *op.geom;
    const double scale = (1.0 + frob(op.T)) * std::max(1.0, frob(g.A) * frob(g.A));
    const double ata = frob(Matrix(g.A * op.T * g.A)) / scale;
    const Matrix reduced = g.range_basis.adjoint() * g.sqrtA * op.T * g.pinv_sqrtA * g.range_basis;
    const double red = frob(reduced) / (1.0 + frob(op.T));
    return {ata, red};
}

} // namespace semih
