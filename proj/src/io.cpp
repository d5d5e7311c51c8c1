#include "semih/io.hpp"

#include <fstream>

namespace semih {

Matrix matrix_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw BadSpec("matrix JSON needs dim, re and im");
    const Index n = j.at("dim").get<Index>();
    if (n < 1) throw BadSpec("matrix dim must be >= 1");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (Index(re.size()) != n || Index(im.size()) != n)
        throw BadSpec("matrix JSON row count does not match dim");
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        if (Index(re[i].size()) != n || Index(im[i].size()) != n)
            throw BadSpec("matrix JSON column count does not match dim");
        for (Index k = 0; k < n; ++k)
            m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
    }
    if (!is_finite(m)) throw BadSpec("matrix JSON has non-finite entries");
    return m;
}

json matrix_to_json(const Matrix& m) {
    json j;
    j["dim"] = m.rows();
    json re = json::array(), im = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Index k = 0; k < m.cols(); ++k) {
            rrow.push_back(m(i, k).real());
            irow.push_back(m(i, k).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Matrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open matrix file: " + path);
    json j;
    f >> j;
    return matrix_from_json(j);
}

void save_matrix(const Matrix& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write matrix file: " + path);
    f << matrix_to_json(m).dump(2) << '\n';
}

json spec_to_json(const InstanceSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["weight"] = to_string(spec.weight);
    j["weight_rank"] = spec.weight_rank;
    j["operator"] = to_string(spec.op);
    j["seed"] = spec.seed;
    j["scale"] = spec.scale;
    return j;
}

InstanceSpec spec_from_json(const json& j) {
    InstanceSpec spec;
    spec.n = j.at("n").get<int>();
    spec.weight = weight_kind_from_string(j.at("weight").get<std::string>());
    spec.weight_rank = j.value("weight_rank", 0);
    spec.op = operator_kind_from_string(j.at("operator").get<std::string>());
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.scale = j.value("scale", 1.0);
    return spec;
}

json tols_to_json(const Tols& tols) {
    json j;
    j["rank_tol"] = tols.rank_tol;
    j["bound_tol"] = tols.bound_tol;
    j["cluster_tol"] = tols.cluster_tol;
    j["membership"] = tols.membership;
    j["equality"] = tols.equality;
    j["center_tol"] = tols.center_tol;
    j["band"] = tols.band;
    j["grid_K"] = tols.grid_K;
    return j;
}

Tols tols_from_json(const json& j) {
    Tols tols;
    tols.rank_tol = j.value("rank_tol", tols.rank_tol);
    tols.bound_tol = j.value("bound_tol", tols.bound_tol);
    tols.cluster_tol = j.value("cluster_tol", tols.cluster_tol);
    tols.membership = j.value("membership", tols.membership);
    tols.equality = j.value("equality", tols.equality);
    tols.center_tol = j.value("center_tol", tols.center_tol);
    tols.band = j.value("band", tols.band);
    tols.grid_K = j.value("grid_K", tols.grid_K);
    return tols;
}

json report_to_json(const VerificationReport& report) {
    json j;
    j["norm_a"] = report.inv.norm_a;
    j["omega_a"] = report.inv.omega_a;
    j["r_a"] = report.inv.r_a;
    j["omega_max"] = report.inv.omega_max;
    j["m_max"] = report.inv.m_max;
    j["c_re"] = report.inv.center.c.real();
    j["c_im"] = report.inv.center.c.imag();
    j["d"] = report.inv.center.d;
    j["formula_d2"] = report.inv.center.formula_d2;
    j["normaloid"] = report.inv.normaloid.is_normaloid;
    j["normaloid_inconclusive"] = report.inv.normaloid.inconclusive;
    j["gap"] = report.inv.center.certified_gap;
    j["dim"] = report.dim;
    j["a_bounded"] = report.a_bounded;
    j["bounded_residual"] = report.bounded_residual;
    json criteria = json::object();
    for (const auto& [name, c] : report.inv.normaloid.criteria) {
        criteria[name] = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"gap", c.gap}, {"holds", c.holds}};
    }
    j["normaloid_criteria"] = std::move(criteria);
    json theorems = json::array();
    for (const auto& r : report.results) {
        json t;
        t["id"] = r.id;
        t["verdict"] = to_string(r.verdict);
        t["slack"] = r.slack;
        t["witness"] = r.witness;
        theorems.push_back(std::move(t));
    }
    j["theorems"] = std::move(theorems);
    return j;
}

json campaign_to_json(const CampaignResult& result) {
    json j;
    j["seed"] = result.seed;
    j["trials"] = result.trials;
    j["dims"] = result.dims;
    json summary;
    summary["pass"] = result.n_pass;
    summary["fail"] = result.n_fail;
    summary["inconclusive"] = result.n_inconclusive;
    summary["not_a_bounded"] = result.n_not_bounded;
    summary["total_verdicts"] = result.total_verdicts;
    summary["inconclusive_fraction"] = result.inconclusive_fraction();
    j["summary"] = std::move(summary);
    json instances = json::array();
    for (const auto& inst : result.instances) {
        json e;
        e["spec"] = spec_to_json(inst.spec);
        e["status"] = inst.status;
        if (inst.status == "ok") e["report"] = report_to_json(inst.report);
        instances.push_back(std::move(e));
    }
    j["instances"] = std::move(instances);
    return j;
}

json instance_artifact(const InstanceSpec& spec, const Matrix& T, const Matrix& A,
                       const Tols& tols) {
    json j;
    j["spec"] = spec_to_json(spec);
    j["tols"] = tols_to_json(tols);
    j["T"] = matrix_to_json(T);
    j["A"] = matrix_to_json(A);
    return j;
}

ReplayInput load_artifact(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open instance file: " + path);
    json j;
    f >> j;
    ReplayInput in;
    in.spec = spec_from_json(j.at("spec"));
    in.tols = j.contains("tols") ? tols_from_json(j.at("tols")) : Tols{};
    if (j.contains("T") && j.contains("A")) {
        in.T = matrix_from_json(j.at("T"));
        in.A = matrix_from_json(j.at("A"));
    } else {
        std::tie(in.T, in.A) = generate(in.spec);
    }
    return in;
}

} // namespace semih
