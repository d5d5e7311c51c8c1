#include "semih/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "semih/detail/optim.hpp"
#include "semih/io.hpp"

namespace semih {

using detail::Rng;

const char* to_string(WeightKind k) {
    switch (k) {
        case WeightKind::identity: return "identity";
        case WeightKind::full_rank_random: return "full_rank_random";
        case WeightKind::rank_deficient: return "rank_deficient";
        case WeightKind::diagonal: return "diagonal";
    }
    return "?";
}

const char* to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::dense_random: return "dense_random";
        case OperatorKind::normal: return "normal";
        case OperatorKind::nilpotent: return "nilpotent";
        case OperatorKind::a_compatible_random: return "a_compatible_random";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

WeightKind weight_kind_from_string(const std::string& s) {
    for (auto k : {WeightKind::identity, WeightKind::full_rank_random,
                   WeightKind::rank_deficient, WeightKind::diagonal})
        if (s == to_string(k)) return k;
    throw BadSpec("unknown weight kind: " + s);
}

OperatorKind operator_kind_from_string(const std::string& s) {
    for (auto k : {OperatorKind::dense_random, OperatorKind::normal,
                   OperatorKind::nilpotent, OperatorKind::a_compatible_random})
        if (s == to_string(k)) return k;
    throw BadSpec("unknown operator kind: " + s);
}

namespace {

// Eigenbasis of A with descending eigenvalues and the rank under the same
// cutoff rule the geometry uses.
std::pair<Matrix, Index> weight_basis(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
    const Index n = A.rows();
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return eig.eigenvalues()[a] > eig.eigenvalues()[b];
    });
    Matrix U(n, n);
    RealVector vals(n);
    for (Index i = 0; i < n; ++i) {
        vals[i] = eig.eigenvalues()[order[i]];
        U.col(i) = eig.eigenvectors().col(order[i]);
    }
    const double cut = kRankTol * std::max(std::max(vals[0], 0.0), 1.0);
    Index r = 0;
    while (r < n && vals[r] > cut) ++r;
    return {U, r};
}

Matrix random_normal_block(Rng& rng, Index n) {
    if (n == 0) return Matrix(0, 0);
    const Matrix U = rng.haar_unitary(n);
    Vector d(n);
    for (Index i = 0; i < n; ++i) d[i] = rng.cgauss();
    return U * d.asDiagonal() * U.adjoint();
}

Matrix random_nilpotent_block(Rng& rng, Index n) {
    if (n == 0) return Matrix(0, 0);
    Matrix N = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) N(i, j) = rng.cgauss();
    const Matrix Q = rng.haar_unitary(n);
    return Q * N * Q.adjoint();
}

// Block-lower structure in the (range, null) ordering keeps null(A)
// invariant: a null vector has coordinates (0, w) and maps to (0, B22 w).
Matrix assemble_blocks(const Matrix& U, const Matrix& B11, const Matrix& B21,
                       const Matrix& B22) {
    const Index r = B11.rows(), n = U.rows();
    Matrix B = Matrix::Zero(n, n);
    B.topLeftCorner(r, r) = B11;
    B.bottomLeftCorner(n - r, r) = B21;
    B.bottomRightCorner(n - r, n - r) = B22;
    return U * B * U.adjoint();
}

} // namespace

std::pair<Matrix, Matrix> generate(const InstanceSpec& spec) {
    if (spec.n < 1) throw BadSpec("instance dimension must be >= 1");
    if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
        throw BadSpec("instance scale must be positive and finite");
    const Index n = spec.n;
    Rng rng(spec.seed);

    Matrix A;
    switch (spec.weight) {
        case WeightKind::identity:
            A = Matrix::Identity(n, n);
            break;
        case WeightKind::full_rank_random: {
            const Matrix G = rng.gaussian_matrix(n, n);
            A = G * G.adjoint() / double(n);
            break;
        }
        case WeightKind::rank_deficient: {
            Index r = spec.weight_rank > 0 ? Index(spec.weight_rank) : std::max<Index>(1, n - 1);
            if (r > n) throw BadSpec("requested weight rank exceeds the dimension");
            const Matrix G = rng.gaussian_matrix(n, r);
            A = G * G.adjoint() / double(n);
            break;
        }
        case WeightKind::diagonal: {
            RealVector d(n);
            bool any = false;
            for (Index i = 0; i < n; ++i) {
                const double v = 0.25 + 1.75 * rng.uniform();
                d[i] = rng.uniform() < 0.25 ? 0.0 : v;
                any = any || d[i] > 0.0;
            }
            if (!any) d[0] = 1.0;
            A = d.cast<Complex>().asDiagonal();
            break;
        }
    }

    const auto [U, r] = weight_basis(A);
    const bool deficient = r < n;

    Matrix T;
    switch (spec.op) {
        case OperatorKind::dense_random:
            T = rng.gaussian_matrix(n, n) / std::sqrt(double(n));
            break;
        case OperatorKind::normal:
            if (!deficient) {
                T = random_normal_block(rng, n);
            } else {
                T = assemble_blocks(U, random_normal_block(rng, r),
                                    Matrix::Zero(n - r, r), random_normal_block(rng, n - r));
            }
            break;
        case OperatorKind::nilpotent:
            if (!deficient) {
                T = random_nilpotent_block(rng, n);
            } else {
                T = assemble_blocks(U, random_nilpotent_block(rng, r),
                                    rng.gaussian_matrix(n - r, r),
                                    random_nilpotent_block(rng, n - r));
            }
            break;
        case OperatorKind::a_compatible_random:
            if (!deficient) {
                T = rng.gaussian_matrix(n, n) / std::sqrt(double(n));
            } else {
                T = assemble_blocks(U, rng.gaussian_matrix(r, r),
                                    rng.gaussian_matrix(n - r, r),
                                    rng.gaussian_matrix(n - r, n - r)) /
                    std::sqrt(double(n));
            }
            break;
    }
    T *= spec.scale;
    return {T, A};
}

namespace {

enum class Leg { yes, no, gray };

Leg classify(double gap, double tol, double band) {
    if (gap <= tol) return Leg::yes;
    if (gap >= band * tol) return Leg::no;
    return Leg::gray;
}

// Agreement verdict for an equivalence theorem: each side carries the
// normalized distance from the clean "holds" state.
TheoremResult equivalence(const std::string& id, std::vector<std::pair<double, double>> sides,
                          double band) {
    TheoremResult res;
    res.id = id;
    bool any_gray = false;
    bool any_yes = false, any_no = false;
    double clearance = 1e300;
    std::ostringstream wit;
    wit.precision(6);
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const auto [gap, tol] = sides[i];
        const Leg leg = classify(gap, tol, band);
        any_gray = any_gray || leg == Leg::gray;
        any_yes = any_yes || leg == Leg::yes;
        any_no = any_no || leg == Leg::no;
        clearance = std::min(clearance,
                             leg == Leg::yes ? (tol - gap) / tol : (gap - band * tol) / tol);
        if (i) wit << ' ';
        wit << "gap" << i << '=' << gap;
    }
    res.slack = clearance;
    res.witness = wit.str();
    if (any_gray)
        res.verdict = Verdict::inconclusive;
    else
        res.verdict = (any_yes && any_no) ? Verdict::fail : Verdict::pass;
    return res;
}

TheoremResult max_range_transfer(const AOperator& op, const Invariants& inv,
                                 const Tols& tols, std::uint64_t seed) {
    TheoremResult res;
    res.id = "max_range_transfer_sampling";
    const auto& g = *op.geom;
    const double norm_a = inv.norm_a;
    if (inv.ranges.degenerate) {
        res.verdict = Verdict::pass;
        res.witness = "degenerate seminorm";
        return res;
    }

    // Matvec-only sampler in the A-geometry: z = A^{1/2}x coordinates, where
    // the norm quotient becomes |Sz|/|z| for S = A^{1/2} T (A^{1/2})^+. The
    // repeated-squaring polish pushes candidates into the maximal cluster
    // while preserving their spread inside it.
    const Matrix S = g.sqrtA * op.T * g.pinv_sqrtA;
    Matrix G = S.adjoint() * S;
    {
        const double f = frob(G);
        if (f > 0) G /= f;
        for (int k = 0; k < 14; ++k) {
            G = G * G;
            const double f2 = frob(G);
            if (f2 > 0) G /= f2;
        }
    }

    Rng rng(detail::mix_seed(seed, 0x7a115));
    const int m = 2048;
    std::vector<Complex> values;
    std::vector<double> norms;
    values.reserve(m);
    norms.reserve(m);
    double sup_found = 0.0;
    for (int i = 0; i < m; ++i) {
        Vector z = g.sqrtA * rng.gaussian_vector(g.dim());
        z = G * z;
        const double zn = z.norm();
        if (zn < 1e-200) continue;
        z /= zn;
        const double tn = (S * z).norm();
        values.push_back((z.adjoint() * (S * z))(0, 0));
        norms.push_back(tn);
        sup_found = std::max(sup_found, tn);
    }

    double violation = 0.0;
    std::vector<Complex> accepted;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (norms[i] < (1.0 - 1e-4) * sup_found) continue;
        accepted.push_back(values[i]);
        violation = std::max(violation, inv.ranges.wmax.containment_violation(values[i]));
    }

    const double s1 = decision_scale(norm_a);
    const double norm_gap = std::abs(sup_found - norm_a) / s1;
    double coverage_gap = 0.0;
    if (inv.ranges.max_subspace_dim <= 2 && !accepted.empty()) {
        const auto& region = inv.ranges.wmax;
        const Index strip = std::max<Index>(1, region.samples() / 64);
        for (Index k = 0; k < region.samples(); k += strip) {
            double best = -1e300;
            for (const Complex& z : accepted)
                best = std::max(best, std::cos(region.angles[k]) * z.real() +
                                          std::sin(region.angles[k]) * z.imag());
            coverage_gap = std::max(coverage_gap, (region.support[k] - best) / s1);
        }
    }

    const double tol_in = 1e-2;
    const double gap = std::max({violation / s1, norm_gap, coverage_gap / 2.0});
    std::ostringstream wit;
    wit.precision(6);
    wit << "samples=" << accepted.size() << " violation=" << violation
        << " norm_gap=" << norm_gap << " coverage_gap=" << coverage_gap
        << " subspace_dim=" << inv.ranges.max_subspace_dim;
    res.witness = wit.str();
    res.slack = tol_in - gap;
    if (accepted.size() < 16)
        res.verdict = Verdict::inconclusive;
    else if (gap <= tol_in)
        res.verdict = Verdict::pass;
    else if (gap >= tols.band * tol_in)
        res.verdict = Verdict::fail;
    else
        res.verdict = Verdict::inconclusive;
    return res;
}

} // namespace

Invariants compute_invariants(const AOperator& op, const Tols& tols) {
    Invariants inv;
    inv.ranges = summarize_ranges(op, tols.grid_K, tols.cluster_tol);
    inv.norm_a = inv.ranges.norm_a;
    inv.omega_a = inv.ranges.omega_a;
    inv.r_a = inv.ranges.r_a;
    inv.omega_max = inv.ranges.omega_max;
    inv.m_max = inv.ranges.m_max;
    inv.normaloid = normaloid_verdict(inv.ranges, tols.membership);
    inv.center = center_of_mass(op, kCenterGapTol);
    return inv;
}

VerificationReport verify_instance(const Matrix& T, const Matrix& A, const Tols& tols) {
    VerificationReport report;
    report.dim = int(T.rows());
    AOperator op = make_a_operator(T, A, tols.rank_tol);
    op.require_bounded(tols.bound_tol);
    report.a_bounded = true;
    report.bounded_residual = op.bounded_residual;
    report.inv = compute_invariants(op, tols);
    const Invariants& inv = report.inv;

    const auto& crit = inv.normaloid.criteria;
    const double mtol = tols.membership;
    const double band = tols.band;

    auto gap_of = [&](const char* name) { return crit.at(name).gap; };

    std::vector<TheoremResult> results;
    results.push_back(equivalence("normaloid_iff_radius_attained",
                                  {{gap_of("spectral_radius_attains_norm"), mtol},
                                   {gap_of("norm_circle_meets_closure"), mtol}},
                                  band));
    results.push_back(equivalence("normaloid_iff_max_range_touches_boundary",
                                  {{gap_of("spectral_radius_attains_norm"), mtol},
                                   {gap_of("max_range_meets_boundary"), mtol}},
                                  band));
    results.push_back(equivalence("normaloid_iff_max_radius_attained",
                                  {{gap_of("spectral_radius_attains_norm"), mtol},
                                   {gap_of("max_radius_attains_radius"), mtol}},
                                  band));
    results.push_back(equivalence("normaloid_criteria_agreement",
                                  {{gap_of("spectral_radius_attains_norm"), mtol},
                                   {gap_of("power_norms_multiplicative"), mtol},
                                   {gap_of("radius_attains_norm"), mtol}},
                                  band));
    results.push_back(max_range_transfer(op, inv, tols, 0xca3a1u));

    {
        const TripleCheck tc = zero_in_wmax_check(op, tols.membership);
        TheoremResult res;
        res.id = "zero_in_max_range_three_way";
        std::ostringstream wit;
        wit.precision(6);
        wit << "m_max=" << tc.m_max_value << " pythag_slack=" << tc.worst_pythag_slack
            << " norm_slack=" << tc.worst_norm_slack;
        res.witness = wit.str();
        res.slack = std::min({tc.m_max_value, -tc.worst_pythag_slack, -tc.worst_norm_slack});
        if (tc.unclear[0] || tc.unclear[1] || tc.unclear[2])
            res.verdict = Verdict::inconclusive;
        else
            res.verdict = (tc.in_wmax == tc.pythag_all && tc.in_wmax == tc.norm_min)
                              ? Verdict::pass
                              : Verdict::fail;
        results.push_back(res);
    }

    {
        TheoremResult res;
        res.id = "distance_formula_agreement";
        const double s2 = std::pow(decision_scale(inv.norm_a), 2);
        const double gap =
            std::abs(inv.center.d * inv.center.d - inv.center.formula_d2) / s2;
        res.slack = tols.equality - gap;
        std::ostringstream wit;
        wit.precision(10);
        wit << "d2=" << inv.center.d * inv.center.d << " formula=" << inv.center.formula_d2;
        res.witness = wit.str();
        res.verdict = gap <= tols.equality ? Verdict::pass : Verdict::fail;
        results.push_back(res);
    }

    {
        const PythagoreanCheck pc = pythagorean_check(op, tols.membership);
        TheoremResult res;
        res.id = "pythagorean_equivalence";
        std::ostringstream wit;
        wit.precision(6);
        wit << "membership_slack=" << pc.membership_slack
            << " identity_gap=" << pc.identity_gap;
        res.witness = wit.str();
        res.slack = pc.in_wmax ? -pc.membership_slack : pc.identity_gap;
        if (pc.unclear)
            res.verdict = Verdict::inconclusive;
        else
            res.verdict = pc.in_wmax == pc.identity_holds ? Verdict::pass : Verdict::fail;
        results.push_back(res);
    }

    {
        const double s1 = decision_scale(inv.norm_a);
        results.push_back(equivalence("center_zero_iff_zero_in_max_range",
                                      {{inv.m_max / s1, tols.membership},
                                       {std::abs(inv.center.c) / s1, tols.center_tol}},
                                      band));
    }

    {
        const InequalityReport ir = inequality_suite(op, tols.equality);
        TheoremResult res;
        res.id = "inequality_chain";
        res.slack = ir.worst_slack;
        std::ostringstream wit;
        wit.precision(6);
        for (const auto& e : ir.entries)
            if (e.applicable && !e.holds) wit << e.id << "=" << e.slack << ' ';
        res.witness = wit.str().empty() ? "all hold" : wit.str();
        res.verdict = ir.all_hold ? Verdict::pass : Verdict::fail;
        results.push_back(res);
    }

    report.results = std::move(results);
    for (const auto& r : report.results) {
        if (r.verdict == Verdict::pass) ++report.n_pass;
        else if (r.verdict == Verdict::fail) ++report.n_fail;
        else ++report.n_inconclusive;
    }
    return report;
}

CampaignResult campaign(int trials, const std::vector<int>& dims, std::uint64_t seed,
                        const Tols& tols, const std::string& fail_dir) {
    if (trials < 1) throw BadSpec("campaign needs at least one trial");
    if (dims.empty()) throw BadSpec("campaign needs at least one dimension");
    for (int n : dims)
        if (n < 1) throw BadSpec("campaign dimensions must be >= 1");

    CampaignResult out;
    out.seed = seed;
    out.trials = trials;
    out.dims = dims;
    out.instances.reserve(trials);

    for (int i = 0; i < trials; ++i) {
        InstanceSpec spec;
        spec.n = dims[i % dims.size()];
        const int combo = int((i / dims.size()) % 16);
        spec.weight = WeightKind(combo % 4);
        spec.op = OperatorKind(combo / 4);
        spec.seed = detail::mix_seed(seed, std::uint64_t(i));
        if (spec.weight == WeightKind::rank_deficient)
            spec.weight_rank = spec.n == 1 ? 1 : 1 + int(spec.seed % std::uint64_t(spec.n - 1));

        const auto [T, A] = generate(spec);
        CampaignInstance inst;
        inst.spec = spec;
        try {
            inst.report = verify_instance(T, A, tols);
            inst.status = "ok";
            out.n_pass += inst.report.n_pass;
            out.n_fail += inst.report.n_fail;
            out.n_inconclusive += inst.report.n_inconclusive;
            out.total_verdicts += int(inst.report.results.size());
            if (inst.report.n_fail > 0 && !fail_dir.empty()) {
                std::filesystem::create_directories(fail_dir);
                std::ostringstream name;
                name << fail_dir << "/fail_" << i << ".json";
                std::ofstream f(name.str());
                f << instance_artifact(spec, T, A, tols).dump(2) << '\n';
            }
        } catch (const NotABounded&) {
            inst.status = "not_a_bounded";
            inst.report.dim = spec.n;
            ++out.n_not_bounded;
        }
        out.instances.push_back(std::move(inst));
    }
    return out;
}

} // namespace semih
