#include <doctest.h>

#include <algorithm>

#include "semih/detail/optim.hpp"
#include "semih/harness.hpp"
#include "semih/ranges.hpp"

using namespace semih;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

const Matrix kShift = mat2(0, 1, 0, 0);
const Matrix kDiag1i = mat2(1, 0, 0, Complex(0, 1));

AOperator random_bounded(std::uint64_t seed, int n, WeightKind w, OperatorKind o) {
    InstanceSpec spec;
    spec.n = n;
    spec.weight = w;
    spec.op = o;
    spec.seed = seed;
    if (w == WeightKind::rank_deficient) spec.weight_rank = std::max(1, n - 1);
    const auto [T, A] = generate(spec);
    return make_a_operator(T, A);
}

// hull of sampled quadratic forms must sit inside the outer approximation
double sampled_containment_violation(const ConvexRegion& region, const AOperator& op,
                                     int samples, std::uint64_t seed) {
    detail::Rng rng(seed);
    const auto& g = *op.geom;
    double worst = -1e300;
    for (int i = 0; i < samples; ++i) {
        Vector x = rng.gaussian_vector(g.dim());
        const double nrm = a_norm_vec(x, g);
        if (nrm < 1e-10) continue;
        x /= nrm;
        const Complex z = a_inner(Vector(op.T * x), x, g);
        worst = std::max(worst, region.containment_violation(z));
    }
    return worst;
}

} // namespace

TEST_CASE("numrange: a 1x1 matrix is a singleton") {
    Matrix M(1, 1);
    M(0, 0) = Complex(2, -1);
    const auto region = numrange(M, 32);
    for (Index k = 0; k < region.samples(); ++k)
        CHECK(std::abs(region.boundary[k] - Complex(2, -1)) < 1e-13);
}

TEST_CASE("numrange: the shift matrix fills the half-unit disk") {
    const auto region = numrange(kShift, 64);
    for (Index k = 0; k < region.samples(); ++k) {
        CHECK(region.support[k] == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(std::abs(region.boundary[k]) == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("numrange: a normal matrix gives the eigenvalue hull") {
    const auto region = numrange(kDiag1i, 360);
    for (Index k = 0; k < region.samples(); ++k) {
        const double theta = region.angles[k];
        CHECK(region.support[k] ==
              doctest::Approx(std::max(std::cos(theta), std::sin(theta))).epsilon(1e-12));
        // boundary points stay on the segment from 1 to i
        const Complex z = region.boundary[k];
        CHECK(std::abs(z.real() + z.imag() - 1.0) < 1e-9);
    }
}

TEST_CASE("numrange: boundary points sit on their support lines") {
    detail::Rng rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        const Matrix M = rng.gaussian_matrix(4, 4);
        const auto region = numrange(M, 90);
        for (Index k = 0; k < region.samples(); ++k) {
            const double proj = std::cos(region.angles[k]) * region.boundary[k].real() +
                                std::sin(region.angles[k]) * region.boundary[k].imag();
            CHECK(std::abs(proj - region.support[k]) < 1e-9 * (1 + frob(M)));
        }
    }
}

TEST_CASE("numrange: rejects bad input") {
    CHECK_THROWS_AS(numrange(Matrix::Identity(2, 2), 4), BadSpec);
    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(numrange(rect, 32), DimMismatch);
}

TEST_CASE("a_numrange: identity weight reduces to the plain range") {
    const Matrix T = mat2(1, Complex(2, 1), 0, -1);
    const auto op = make_a_operator(T, Matrix::Identity(2, 2));
    const auto weighted = a_numrange(op, 60);
    const auto plain = numrange(T, 60);
    CHECK((weighted.support - plain.support).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a_numrange: rank-one weight collapses to a point") {
    const auto op = make_a_operator(mat2(3, 0, 5, 7), mat2(1, 0, 0, 0));
    const auto region = a_numrange(op, 32);
    for (Index k = 0; k < region.samples(); ++k)
        CHECK(std::abs(region.boundary[k] - Complex(3, 0)) < 1e-12);
}

TEST_CASE("a_numrange: sampled values stay inside the outer approximation") {
    int k = 0;
    for (auto w : {WeightKind::full_rank_random, WeightKind::rank_deficient,
                   WeightKind::diagonal}) {
        const auto op =
            random_bounded(300 + k, 4 + k % 3, w, OperatorKind::a_compatible_random);
        ++k;
        const auto region = a_numrange(op, kGridK);
        const double scale = 1.0 + a_op_seminorm(op);
        CHECK(sampled_containment_violation(region, op, 20000, 40 + k) <= 1e-9 * scale);
    }
}

TEST_CASE("a_numerical_radius: closed forms") {
    const Matrix I2 = Matrix::Identity(2, 2);
    CHECK(a_numerical_radius(make_a_operator(I2, I2)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a_numerical_radius(make_a_operator(kShift, I2)) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(a_numerical_radius(make_a_operator(mat2(2, 0, 0, 1), I2)) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("a_numerical_radius: pinched between half norm and norm") {
    for (std::uint64_t seed = 60; seed < 70; ++seed) {
        const auto op = random_bounded(seed, 5, WeightKind::full_rank_random,
                                       OperatorKind::dense_random);
        const double norm = a_op_seminorm(op);
        const double omega = a_numerical_radius(op);
        CHECK(omega >= 0.5 * norm - 1e-10);
        CHECK(omega <= norm + 1e-10);
    }
}

TEST_CASE("a_spectral_radius: closed forms") {
    const Matrix I2 = Matrix::Identity(2, 2);
    CHECK(a_spectral_radius(make_a_operator(kShift, I2)) < 1e-12);
    CHECK(a_spectral_radius(make_a_operator(mat2(2, 0, 0, 1), I2)) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a_spectral_radius(make_a_operator(mat2(3, 0, 5, 7), mat2(1, 0, 0, 0))) ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("maximal_subspace: singular clusters") {
    {
        const Matrix X = maximal_subspace(mat2(1, 0, 0, 0));
        REQUIRE(X.cols() == 1);
        CHECK(std::abs(std::abs(X(0, 0)) - 1.0) < 1e-13);
        CHECK(std::abs(X(1, 0)) < 1e-13);
    }
    {
        const Matrix X = maximal_subspace(kShift);
        REQUIRE(X.cols() == 1);
        CHECK(std::abs(std::abs(X(1, 0)) - 1.0) < 1e-13);
    }
    CHECK(maximal_subspace(kDiag1i).cols() == 2);
    CHECK(maximal_subspace(Matrix::Zero(3, 3)).cols() == 3);
}

TEST_CASE("a_max_numrange: canonical shapes") {
    const Matrix I2 = Matrix::Identity(2, 2);
    {
        const auto region = a_max_numrange(make_a_operator(mat2(1, 0, 0, 0), I2), 64);
        for (Index k = 0; k < region.samples(); ++k)
            CHECK(std::abs(region.boundary[k] - Complex(1, 0)) < 1e-12);
    }
    {
        const auto region = a_max_numrange(make_a_operator(kShift, I2), 64);
        for (Index k = 0; k < region.samples(); ++k)
            CHECK(std::abs(region.boundary[k]) < 1e-12);
    }
    {
        // all singular values tie: the maximal range is the whole range
        const auto region = a_max_numrange(make_a_operator(kDiag1i, I2), 360);
        for (Index k = 0; k < region.samples(); ++k) {
            const double theta = region.angles[k];
            CHECK(region.support[k] ==
                  doctest::Approx(std::max(std::cos(theta), std::sin(theta)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("a_max_numrange: degenerate seminorm yields a flagged origin") {
    const auto op = make_a_operator(mat2(0, 0, 1, 0), mat2(1, 0, 0, 0));
    const auto region = a_max_numrange(op, 32);
    CHECK(region.degenerate);
    for (Index k = 0; k < region.samples(); ++k)
        CHECK(std::abs(region.boundary[k]) == 0.0);
}

TEST_CASE("omega_max and m_max: canonical values") {
    const Matrix I2 = Matrix::Identity(2, 2);
    {
        const auto op = make_a_operator(mat2(1, 0, 0, 0), I2);
        CHECK(omega_max(op) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(m_max(op) == doctest::Approx(1.0).epsilon(1e-10));
    }
    {
        const auto op = make_a_operator(kShift, I2);
        CHECK(omega_max(op) < 1e-10);
        CHECK(m_max(op) < 1e-10);
    }
    {
        const auto op = make_a_operator(kDiag1i, I2);
        CHECK(omega_max(op) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(m_max(op) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    }
}

TEST_CASE("maximal range is contained in the closed range") {
    for (std::uint64_t seed = 200; seed < 208; ++seed) {
        const auto op = random_bounded(seed, 4, WeightKind::full_rank_random,
                                       OperatorKind::dense_random);
        const auto s = summarize_ranges(op);
        for (Index k = 0; k < s.wmax.samples(); ++k)
            CHECK(s.wa.containment_violation(s.wmax.boundary[k]) <= 1e-8);
    }
}

TEST_CASE("maximal range is convex: support dominates sampled points") {
    detail::Rng rng(88);
    for (std::uint64_t seed = 210; seed < 214; ++seed) {
        const auto op = random_bounded(seed, 5, WeightKind::full_rank_random,
                                       OperatorKind::normal);
        const auto s = summarize_ranges(op);
        for (int i = 0; i < 500; ++i) {
            Vector u = rng.gaussian_vector(s.compression.rows());
            u.normalize();
            const Complex z = (u.adjoint() * (s.compression * u))(0, 0);
            CHECK(s.wmax.containment_violation(z) <= 1e-6);
        }
    }
}

TEST_CASE("norm circle meets the maximal range iff it meets the closure") {
    // both attainments agree at tolerance 1e-6 on fixtures and random draws
    const Matrix I2 = Matrix::Identity(2, 2);
    std::vector<AOperator> ops;
    ops.push_back(make_a_operator(kShift, I2));
    ops.push_back(make_a_operator(kDiag1i, I2));
    ops.push_back(make_a_operator(mat2(1, 0, 0, 0), I2));
    for (std::uint64_t seed = 90; seed < 96; ++seed)
        ops.push_back(random_bounded(seed, 4, WeightKind::full_rank_random,
                                     OperatorKind::dense_random));
    for (const auto& op : ops) {
        const auto s = summarize_ranges(op);
        const bool gamma_meets_wmax = std::abs(s.omega_max - s.norm_a) <= 1e-6;
        const bool gamma_meets_closure = std::abs(s.omega_a - s.norm_a) <= 1e-6;
        const double margin =
            std::min(std::abs(s.omega_max - s.norm_a), std::abs(s.omega_a - s.norm_a));
        if (margin > 1e-5 || (gamma_meets_wmax && gamma_meets_closure))
            CHECK(gamma_meets_wmax == gamma_meets_closure);
    }
}

TEST_CASE("range transfer: reduced-space region matches direct A-geometry sampling") {
    // 1e5 uniform A-sphere samples for the interior plus a matvec-only
    // gradient ascent per probe direction for the support; the two support
    // functions must agree to 1e-2 in Hausdorff distance.
    int idx = 0;
    for (auto w : {WeightKind::full_rank_random, WeightKind::rank_deficient,
                   WeightKind::diagonal}) {
        const int n = 4 + idx;
        const auto op = random_bounded(700 + idx, n, w, OperatorKind::a_compatible_random);
        ++idx;
        const auto& g = *op.geom;
        const auto region = a_numrange(op, kGridK);
        const double scale = 1.0 + a_op_seminorm(op);

        constexpr int kDirections = 72; // divides the 720-angle grid
        const Index dir_stride = region.samples() / kDirections;
        RealVector h_sample = RealVector::Constant(kDirections, -1e300);
        auto absorb = [&](const Vector& x) {
            const double nrm = a_norm_vec(x, g);
            if (nrm < 1e-10) return;
            const Complex z = a_inner(Vector(op.T * x), x, g) / (nrm * nrm);
            for (int a = 0; a < kDirections; ++a) {
                const double theta = region.angles[a * dir_stride];
                h_sample[a] = std::max(h_sample[a], std::cos(theta) * z.real() +
                                                        std::sin(theta) * z.imag());
            }
            CHECK(region.containment_violation(z) <= 1e-9 * scale);
        };

        detail::Rng rng(910 + idx);
        for (int i = 0; i < 100000 - kDirections * 1000; ++i)
            absorb(rng.gaussian_vector(n));
        // support maximizers move continuously with the angle, so each
        // direction warm-starts from the previous winner plus a fresh draw
        Vector warm = rng.gaussian_vector(n);
        for (int a = 0; a < kDirections; ++a) {
            const double theta = region.angles[a * dir_stride];
            const Matrix H =
                0.5 * (std::polar(1.0, -theta) * (g.A * op.T) +
                       std::polar(1.0, theta) * (op.T.adjoint() * g.A));
            auto ascend = [&](Vector x) {
                const double nx = a_norm_vec(x, g);
                if (nx < 1e-12) return x;
                x /= nx;
                double step = 0.5 / scale;
                for (int it = 0; it < 500; ++it) {
                    const double f = std::real((x.adjoint() * (H * x))(0, 0));
                    Vector trial = x + step * (H * x - f * (g.A * x));
                    const double tn = a_norm_vec(trial, g);
                    if (tn < 1e-12) break;
                    trial /= tn;
                    if (std::real((trial.adjoint() * (H * trial))(0, 0)) > f) {
                        x = trial;
                        step *= 1.2;
                    } else {
                        step *= 0.5;
                        if (step < 1e-15) break;
                    }
                }
                return x;
            };
            const Vector a1 = ascend(warm);
            const Vector a2 = ascend(rng.gaussian_vector(n));
            const auto value = [&](const Vector& x) {
                const double nx = a_norm_vec(x, g);
                if (nx < 1e-12) return -1e300;
                return std::real((x.adjoint() * (H * x))(0, 0)) / (nx * nx);
            };
            warm = value(a1) >= value(a2) ? a1 : a2;
            absorb(a1);
            absorb(a2);
        }

        double hausdorff = 0.0;
        for (int a = 0; a < kDirections; ++a)
            hausdorff = std::max(hausdorff,
                                 std::abs(h_sample[a] - region.support[a * dir_stride]));
        CHECK(hausdorff <= 1e-2 * scale);
    }
}

TEST_CASE("scale covariance of every radius and region") {
    const auto op = random_bounded(321, 4, WeightKind::diagonal,
                                   OperatorKind::a_compatible_random);
    const double s = 2.5;
    const AOperator scaled = make_a_operator(Matrix(s * op.T), op.geom);
    const auto a = summarize_ranges(op);
    const auto b = summarize_ranges(scaled);
    const double tol = 1e-9 * (1 + a.norm_a);
    CHECK(std::abs(b.norm_a - s * a.norm_a) < tol);
    CHECK(std::abs(b.omega_a - s * a.omega_a) < tol);
    CHECK(std::abs(b.r_a - s * a.r_a) < tol);
    CHECK(std::abs(b.omega_max - s * a.omega_max) < tol);
    CHECK(std::abs(b.m_max - s * a.m_max) < tol);
    CHECK((b.wa.support - s * a.wa.support).cwiseAbs().maxCoeff() < tol);
    CHECK((b.wmax.support - s * a.wmax.support).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("normaloid_verdict: fixtures") {
    const Matrix I2 = Matrix::Identity(2, 2);
    {
        const auto v = normaloid_verdict(make_a_operator(kDiag1i, I2));
        CHECK(v.is_normaloid);
        CHECK_FALSE(v.inconclusive);
    }
    {
        const auto v = normaloid_verdict(make_a_operator(kShift, I2));
        CHECK_FALSE(v.is_normaloid);
        CHECK_FALSE(v.inconclusive);
        CHECK(v.criteria.at("spectral_radius_attains_norm").gap ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    {
        const auto v =
            normaloid_verdict(make_a_operator(mat2(3, 0, 5, 7), mat2(1, 0, 0, 0)));
        CHECK(v.is_normaloid);
        CHECK_FALSE(v.inconclusive);
    }
}

TEST_CASE("normaloid_verdict: six criteria agree whenever margins are clear") {
    for (std::uint64_t seed = 400; seed < 420; ++seed) {
        const auto op = random_bounded(seed, 3 + seed % 4,
                                       seed % 2 ? WeightKind::full_rank_random
                                                : WeightKind::rank_deficient,
                                       seed % 3 ? OperatorKind::a_compatible_random
                                                : OperatorKind::normal);
        const auto v = normaloid_verdict(op);
        if (v.inconclusive) continue;
        int yes = 0;
        for (const auto& [name, c] : v.criteria) yes += c.holds ? 1 : 0;
        CHECK((yes == 0 || yes == int(v.criteria.size())));
    }
}

TEST_CASE("region serialization: CSV schema and SVG layers") {
    const auto op = make_a_operator(kDiag1i, Matrix::Identity(2, 2));
    const auto s = summarize_ranges(op, 90);
    const std::string csv = region_csv(s.wa);
    CHECK(csv.rfind("theta,support,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 91);

    const std::string svg = regions_svg(s.wa, s.wmax, Complex(0.5, 0.5), s.norm_a);
    CHECK(svg.find("<svg xmlns") != std::string::npos);
    CHECK(svg.find("viewBox") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 4);
    CHECK(svg.find("polygon") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos); // the norm circle
}
