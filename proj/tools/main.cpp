#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semih/io.hpp"

namespace {

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        for (int n = lo; n <= hi; ++n) dims.push_back(n);
    } else {
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            dims.push_back(std::stoi(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    }
    if (dims.empty()) throw semih::BadSpec("empty dimension list");
    return dims;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw semih::Error("cannot write " + path);
    f << text;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

int run_compute(const std::string& matrix_path, const std::string& weight_path, int grid,
                const std::string& out, const std::string& csv, const std::string& svg) {
    const semih::Matrix T = semih::load_matrix(matrix_path);
    const semih::Matrix A = semih::load_matrix(weight_path);
    semih::Tols tols;
    tols.grid_K = grid;
    const semih::VerificationReport report = semih::verify_instance(T, A, tols);
    const std::string text = semih::report_to_json(report).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);

    if (!csv.empty() || !svg.empty()) {
        const auto& R = report.inv.ranges;
        if (!csv.empty()) {
            write_text(csv, semih::region_csv(R.wa));
            write_text(with_suffix(csv, "_wmax"), semih::region_csv(R.wmax));
        }
        if (!svg.empty())
            write_text(svg, semih::regions_svg(R.wa, R.wmax, report.inv.center.c,
                                               report.inv.norm_a));
    }
    return 0;
}

int run_verify(int trials, const std::string& dims_text, std::uint64_t seed, double tol,
               const std::string& out, const std::string& fail_dir) {
    semih::Tols tols;
    if (tol > 0) {
        tols.membership = tol;
        tols.equality = 10.0 * tol;
    }
    const auto dims = parse_dims(dims_text);
    const semih::CampaignResult result = semih::campaign(trials, dims, seed, tols, fail_dir);
    const std::string text = semih::campaign_to_json(result).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
    std::cerr << "pass " << result.n_pass << ", fail " << result.n_fail << ", inconclusive "
              << result.n_inconclusive << ", rejected " << result.n_not_bounded << "\n";
    return result.clean() ? 0 : 1;
}

int run_replay(const std::string& instance_path) {
    const semih::ReplayInput in = semih::load_artifact(instance_path);
    const semih::VerificationReport report = semih::verify_instance(in.T, in.A, in.tols);
    std::cout << semih::report_to_json(report).dump(2) << "\n";
    return report.n_fail == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-Hilbertian operator invariants: seminorms, numerical ranges, "
                 "maximal ranges, centers of mass, and property verification"};
    app.require_subcommand(1);

    std::string matrix_path, weight_path, out, csv, svg;
    int grid = semih::kGridK;
    auto* compute = app.add_subcommand("compute", "invariants and regions for one instance");
    compute->add_option("--matrix", matrix_path, "operator T (JSON)")->required();
    compute->add_option("--weight", weight_path, "weight A (JSON)")->required();
    compute->add_option("--grid", grid, "angle grid size");
    compute->add_option("--out", out, "report JSON path (default stdout)");
    compute->add_option("--csv", csv, "region CSV path (W_max lands next to it)");
    compute->add_option("--svg", svg, "region SVG path");

    int trials = 500;
    std::string dims_text = "1..6";
    std::uint64_t seed = 42;
    double tol = 0.0;
    std::string campaign_out, fail_dir;
    auto* verify = app.add_subcommand("verify", "random-instance verification campaign");
    verify->add_option("--trials", trials, "number of instances");
    verify->add_option("--dims", dims_text, "dimensions, e.g. 2..6 or 2,4,6");
    verify->add_option("--seed", seed, "campaign seed");
    verify->add_option("--tol", tol, "geometric tolerance (identity checks use 10x)");
    verify->add_option("--out", campaign_out, "campaign JSON path (default stdout)");
    verify->add_option("--fail-dir", fail_dir, "directory for failure artifacts");

    std::string instance_path;
    auto* replay = app.add_subcommand("replay", "re-run a serialized instance");
    replay->add_option("--instance", instance_path, "instance artifact JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed())
            return run_compute(matrix_path, weight_path, grid, out, csv, svg);
        if (verify->parsed())
            return run_verify(trials, dims_text, seed, tol, campaign_out, fail_dir);
        if (replay->parsed()) return run_replay(instance_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
