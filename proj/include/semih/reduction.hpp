#pragma once

#include <vector>

#include "semih/core.hpp"

namespace semih {

/// The r x r matrix of the reduced operator in the orthonormal eigenbasis of
/// A restricted to its range. It carries every A-quantity of T: seminorm,
/// numerical range, spectral radius, maximal range, distance to scalars.
/// Valid only in finite dimension, where range(A^{1/2}) = range(A) is closed.
struct ReducedOperator {
    Matrix mat;
    std::shared_ptr<const WeightGeometry> geom;
    double intertwine_residual = 0.0;
};

/// mat = V* A^{1/2} T (A^{1/2})^+ V. Throws NotABounded when T does not keep
/// null(A) invariant (no reduced operator exists then).
ReducedOperator reduce(const AOperator& op);

/// |T|_A as the largest singular value of the reduced operator.
double a_op_seminorm(const AOperator& op);

/// (|T^k|_A^{1/k}) for k = 1..n_max, each power reduced from scratch.
/// Converges to the A-spectral radius; used as a cross-check only.
std::vector<double> gelfand_estimate(const AOperator& op, int n_max);

} // namespace semih
