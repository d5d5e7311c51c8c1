#include "semih/reduction.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "semih/detail/optim.hpp"

namespace semih {

namespace {

double sigma_max(const Matrix& m) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues()[0];
}

} // namespace

ReducedOperator reduce(const AOperator& op) {
    op.require_bounded();
    const auto& g = *op.geom;
    ReducedOperator red;
    red.geom = op.geom;
    red.mat = g.range_basis.adjoint() * g.sqrtA * op.T * g.pinv_sqrtA * g.range_basis;

    // The defining intertwining: (V mat V*) A^{1/2} x = A^{1/2} T x for all x.
    const Matrix lhs = g.range_basis * red.mat * g.range_basis.adjoint() * g.sqrtA;
    const Matrix rhs = g.sqrtA * op.T;
    const double norm_a = sigma_max(red.mat);
    detail::Rng rng(0x1234abcdu);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
        const Vector x = rng.gaussian_vector(g.dim());
        const double num = ((lhs - rhs) * x).norm();
        const double den = norm_a * a_norm_vec(x, g) + 1e-8 * (1.0 + frob(op.T)) * x.norm();
        worst = std::max(worst, num / den);
    }
    red.intertwine_residual = worst;
    return red;
}

double a_op_seminorm(const AOperator& op) {
    return sigma_max(reduce(op).mat);
}

std::vector<double> gelfand_estimate(const AOperator& op, int n_max) {
    op.require_bounded();
    if (n_max < 1) throw BadSpec("gelfand_estimate needs n_max >= 1");
    std::vector<double> out;
    out.reserve(n_max);
    Matrix power = Matrix::Identity(op.dim(), op.dim());
    for (int k = 1; k <= n_max; ++k) {
        power = power * op.T;
        if (!power.allFinite() || frob(power) > 1e150)
            throw OverflowError("|T^k| exceeds the floating range; rescale T first");
        const AOperator pk = make_a_operator(power, op.geom);
        out.push_back(std::pow(a_op_seminorm(pk), 1.0 / k));
    }
    return out;
}

} // namespace semih
