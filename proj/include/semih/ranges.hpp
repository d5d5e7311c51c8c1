#pragma once

#include <map>
#include <string>
#include <vector>

#include "semih/reduction.hpp"

namespace semih {

/// Boundary sample of a numerical-range-type convex set: support values and
/// touching points at K equally spaced angles. The polygon through the
/// boundary points is an inner approximation; the support lines give an
/// outer one.
struct ConvexRegion {
    RealVector angles;
    RealVector support;
    Vector boundary;
    bool degenerate = false; // |T|_A = 0: the set collapsed to {0}

    Index samples() const { return angles.size(); }
    /// max over the sampled halfplanes of Re(e^{-i theta} z) - h(theta);
    /// <= 0 means z lies in the outer approximation.
    double containment_violation(Complex z) const;
};

/// Support-function sweep over the Hermitian parts (e^{-i theta} M + h.c.)/2.
ConvexRegion numrange(const Matrix& M, int K = kGridK);

/// Largest eigenvalue of the Hermitian part of e^{-i theta} M.
double support_at(const Matrix& M, double theta);

/// Numerical radius of a plain matrix: grid sweep plus golden-section
/// refinement around every grid-local maximum of the support function.
double numerical_radius(const Matrix& M, int K = kGridK);

/// Distance from the origin to W(M) (the Crawford-type quantity): zero when
/// the support function stays nonnegative, else the deepest support gap.
double origin_distance(const Matrix& M, int K = kGridK);

ConvexRegion a_numrange(const AOperator& op, int K = kGridK);
double a_numerical_radius(const AOperator& op);
double a_spectral_radius(const AOperator& op);

/// Orthonormal basis of the span of right singular vectors whose singular
/// values sit in the top relative cluster. For M = 0 every unit vector
/// maximizes, so the full identity basis is returned.
Matrix maximal_subspace(const Matrix& M, double cluster_tol = kClusterTol);

/// Compression of M to its maximal singular subspace; W of it realizes the
/// maximal numerical range in finite dimension.
Matrix maximal_compression(const Matrix& M, double cluster_tol = kClusterTol);

ConvexRegion a_max_numrange(const AOperator& op, int K = kGridK,
                            double cluster_tol = kClusterTol);

double omega_max(const AOperator& op);
double m_max(const AOperator& op);

struct CriterionResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;  // normalized deciding margin
    bool holds = false;
};

struct NormaloidVerdict {
    bool is_normaloid = false;
    bool inconclusive = false;
    std::map<std::string, CriterionResult> criteria;
    double tol_used = 0.0;
};

/// Everything the verdict and the theorem registry need, computed once.
struct RangeSummary {
    Matrix reduced;
    double norm_a = 0.0;
    double r_a = 0.0;
    double omega_a = 0.0;
    double omega_max = 0.0;
    double m_max = 0.0;
    std::vector<double> power_norms; // |T^k|_A, k = 1..5
    ConvexRegion wa;
    ConvexRegion wmax;
    Matrix compression;
    Index max_subspace_dim = 0;
    bool degenerate = false;
};

RangeSummary summarize_ranges(const AOperator& op, int K = kGridK,
                              double cluster_tol = kClusterTol);

/// Six independent routes to A-normaloidness; their mutual agreement is
/// itself a verified property.
NormaloidVerdict normaloid_verdict(const RangeSummary& s, double tol = kMembershipTol);
NormaloidVerdict normaloid_verdict(const AOperator& op, double tol = kMembershipTol);

/// Distance from z to the boundary of the region (refined over angles);
/// near zero exactly when z touches the boundary.
double boundary_distance(const Matrix& M, const ConvexRegion& region, Complex z);

std::string region_csv(const ConvexRegion& region);

/// Layered SVG: W_A polyline, W_max^A filled polygon, c_A cross, the circle
/// of radius |T|_A and the origin, viewBox padded 10%.
std::string regions_svg(const ConvexRegion& wa, const ConvexRegion& wmax,
                        Complex center, double norm_a);

} // namespace semih
