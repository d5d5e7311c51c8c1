#pragma once

#include <array>
#include <string>
#include <vector>

#include "semih/ranges.hpp"

namespace semih {

/// The unique minimizer c of |T - c|_A over scalars, with the minimal value
/// d, a certified suboptimality bound from convexity, and the independent
/// value of d^2 from the variational formula.
struct MassCenter {
    Complex c{0.0, 0.0};
    double d = 0.0;
    int iterations = 0;
    double certified_gap = 0.0;
    double formula_d2 = 0.0;
};

struct NoConvergence : Error {
    NoConvergence(const std::string& what, MassCenter best_found)
        : Error(what), best(best_found) {}
    MassCenter best;
};

MassCenter center_of_mass(const AOperator& op, double tol = kCenterGapTol);

/// Plain-matrix variant in the operator norm; the weighted version is this
/// applied to the reduced operator.
MassCenter center_of_mass(const Matrix& M, double tol = kCenterGapTol);

/// sup over unit vectors of |Ty|^2 - |<Ty,y>|^2 on the reduced space;
/// multi-start projected ascent, reported as a certified lower bound.
double distance_formula(const AOperator& op);
double distance_formula(const Matrix& M);

/// The three equivalent conditions for 0 in W_max^A, each evaluated by its
/// own route. `unclear` flags legs whose deciding margin sits in the gray
/// band between tol and 10 tol.
struct TripleCheck {
    bool in_wmax = false;       // m_max <= tol (relative)
    bool pythag_all = false;    // |T|^2 + |l|^2 <= |T+l|^2 on the disk
    bool norm_min = false;      // |T| <= |T+l| on the disk
    std::array<bool, 3> unclear{false, false, false};
    double m_max_value = 0.0;
    double worst_pythag_slack = 0.0;
    double worst_norm_slack = 0.0;
};

TripleCheck zero_in_wmax_check(const AOperator& op, double tol = kMembershipTol);

struct PythagoreanCheck {
    bool in_wmax = false;        // c_A lies in the W_max region
    bool identity_holds = false; // d^2 + |c|^2 = |T|_A^2
    double membership_slack = 0.0;
    double identity_gap = 0.0;
    bool unclear = false;
};

PythagoreanCheck pythagorean_check(const AOperator& op, double tol = kMembershipTol);

struct InequalityEntry {
    std::string id;
    double slack = 0.0;   // >= 0 means the inequality holds
    bool applicable = true;
    bool holds = true;
};

struct InequalityReport {
    std::vector<InequalityEntry> entries;
    bool all_hold = true;
    double worst_slack = 0.0;
};

/// The full inequality chain: radius bounds, |c| <= m_max <= omega_max <= |T|,
/// the refinement |T|^2 <= d^2 + m_max^2 <= d^2 + omega^2, the m_max + d^2/2|c|
/// bound, and |T| = d when c = 0.
InequalityReport inequality_suite(const AOperator& op, double tol = kEqualityTol);

} // namespace semih
