#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semih/variational.hpp"

namespace semih {

enum class WeightKind { identity, full_rank_random, rank_deficient, diagonal };
enum class OperatorKind { dense_random, normal, nilpotent, a_compatible_random };

const char* to_string(WeightKind k);
const char* to_string(OperatorKind k);
WeightKind weight_kind_from_string(const std::string& s);
OperatorKind operator_kind_from_string(const std::string& s);

struct InstanceSpec {
    int n = 2;
    WeightKind weight = WeightKind::identity;
    int weight_rank = 0; // used by rank_deficient; 0 means n-1
    OperatorKind op = OperatorKind::dense_random;
    std::uint64_t seed = 0;
    double scale = 1.0;
};

/// Deterministic (T, A) pair. A is PSD with the requested structure; for
/// rank-deficient weights the structured operator kinds are built inside A's
/// eigenbasis so they keep null(A) invariant, while dense_random stays
/// unconstrained and exercises the rejection path.
std::pair<Matrix, Matrix> generate(const InstanceSpec& spec);

struct Tols {
    double rank_tol = kRankTol;
    double bound_tol = kBoundTol;
    double cluster_tol = kClusterTol;
    double membership = kMembershipTol; // relative to the decision scale
    double equality = kEqualityTol;     // relative to the squared decision scale
    double center_tol = 1e-3;           // |c_A| = 0 threshold, relative
    double band = kInconclusiveBand;
    int grid_K = kGridK;
};

enum class Verdict { pass, fail, inconclusive };
const char* to_string(Verdict v);

struct TheoremResult {
    std::string id;
    Verdict verdict = Verdict::pass;
    double slack = 0.0;
    std::string witness;
};

/// One instance's worth of invariants, in report-schema order.
struct Invariants {
    double norm_a = 0.0;
    double omega_a = 0.0;
    double r_a = 0.0;
    double omega_max = 0.0;
    double m_max = 0.0;
    MassCenter center;
    NormaloidVerdict normaloid;
    RangeSummary ranges;
};

Invariants compute_invariants(const AOperator& op, const Tols& tols = {});

struct VerificationReport {
    std::optional<InstanceSpec> spec;
    int dim = 0;
    bool a_bounded = false;
    double bounded_residual = 0.0;
    Invariants inv;
    std::vector<TheoremResult> results;
    int n_pass = 0;
    int n_fail = 0;
    int n_inconclusive = 0;
};

/// Runs the whole theorem registry on one A-bounded instance.
/// Throws NotABounded before any theorem runs otherwise.
VerificationReport verify_instance(const Matrix& T, const Matrix& A,
                                   const Tols& tols = {});

struct CampaignInstance {
    InstanceSpec spec;
    std::string status; // "ok" or "not_a_bounded"
    VerificationReport report;
};

struct CampaignResult {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<int> dims;
    std::vector<CampaignInstance> instances;
    int n_pass = 0;
    int n_fail = 0;
    int n_inconclusive = 0;
    int n_not_bounded = 0;
    int total_verdicts = 0;

    bool clean() const { return n_fail == 0; }
    double inconclusive_fraction() const {
        return total_verdicts ? double(n_inconclusive) / double(total_verdicts) : 0.0;
    }
};

/// Cycles every weight/operator combination across the dims, deterministic
/// in (trials, dims, seed). Failing instances are serialized to fail_dir
/// when it is nonempty.
CampaignResult campaign(int trials, const std::vector<int>& dims, std::uint64_t seed,
                        const Tols& tols = {}, const std::string& fail_dir = "");

} // namespace semih
