#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "semih/types.hpp"

namespace semih::detail {

/// Deterministic RNG. Gaussians come from a hand-rolled Box-Muller so the
/// stream does not depend on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0, 1)
        return (eng_() >> 11) * 0x1.0p-53;
    }
    double gauss();
    Complex cgauss() { return Complex(gauss(), gauss()) / std::sqrt(2.0); }

    std::uint64_t raw() { return eng_(); }

    Vector gaussian_vector(Index n);
    Matrix gaussian_matrix(Index rows, Index cols);
    /// Haar-distributed unitary via QR with phase-fixed R diagonal.
    Matrix haar_unitary(Index n);

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Mixes a base seed with an index into an independent stream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Golden-section maximization of f on [lo, hi]; f need only be unimodal on
/// the bracket. Returns (argmax, max).
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi,
                                     double xtol = 1e-12, int max_iter = 200);

inline std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                            double lo, double hi,
                                            double xtol = 1e-12, int max_iter = 200) {
    auto [x, v] = golden_max([&](double t) { return -f(t); }, lo, hi, xtol, max_iter);
    return {x, -v};
}

struct NelderMeadResult {
    Eigen::Vector2d x;
    double value = 0.0;
    int evals = 0;
};

/// Derivative-free simplex minimization on the plane. sigma_max(M - lambda I)
/// can be nonsmooth exactly at the minima the theorems care about, so no
/// gradients are assumed.
NelderMeadResult nelder_mead_2d(const std::function<double(const Eigen::Vector2d&)>& f,
                                const Eigen::Vector2d& start, double init_size,
                                double size_tol, int max_iter);

struct CertifyResult {
    double lower_bound = 0.0;
    int evals = 0;
    bool certified = false;
    double best_value = 0.0;       // may improve on the incumbent
    Eigen::Vector2d best_point = Eigen::Vector2d::Zero();
};

/// Certified lower bound for a convex 1-Lipschitz g over the square
/// [-radius, radius]^2 (which contains the bounding disk), via branch and
/// bound with subgradient cutting planes. g must return (value, subgradient).
CertifyResult certify_min_box(
    const std::function<std::pair<double, Eigen::Vector2d>(const Eigen::Vector2d&)>& g,
    double radius, double best_value, double target_gap, int max_evals);

} // namespace semih::detail
