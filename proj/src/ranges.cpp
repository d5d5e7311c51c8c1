#include "semih/ranges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "semih/detail/optim.hpp"

namespace semih {

namespace {

Matrix herm_part(const Matrix& M, double theta) {
    const Complex phase = std::polar(1.0, -theta);
    const Matrix R = phase * M;
    return 0.5 * (R + R.adjoint());
}

std::pair<double, Vector> top_eigpair(const Matrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
    if (eig.info() != Eigen::Success) throw EigFailure("Hermitian eigensolver failed");
    const Index n = H.rows();
    return {eig.eigenvalues()[n - 1], eig.eigenvectors().col(n - 1)};
}

double sigma_max(const Matrix& m) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues()[0];
}

// Local extrema of a periodic grid sample, best-first, at most max_count,
// and never more than `drop` below the best grid value.
std::vector<int> local_extrema(const RealVector& values, bool maxima, int max_count,
                               double drop) {
    const int K = int(values.size());
    std::vector<int> idx;
    for (int k = 0; k < K; ++k) {
        const double prev = values[(k + K - 1) % K];
        const double next = values[(k + 1) % K];
        const bool is_ext = maxima ? (values[k] >= prev && values[k] >= next)
                                   : (values[k] <= prev && values[k] <= next);
        if (is_ext) idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return maxima ? values[a] > values[b] : values[a] < values[b];
    });
    const double best = idx.empty() ? 0.0 : values[idx.front()];
    std::vector<int> out;
    for (int k : idx) {
        if (int(out.size()) >= max_count) break;
        if (maxima ? (values[k] < best - drop) : (values[k] > best + drop)) break;
        out.push_back(k);
    }
    return out;
}

// Refined extremum of theta -> support_at(M, theta) seeded from the grid.
double refine_support_extremum(const Matrix& M, const ConvexRegion& region, bool maxima) {
    const int K = int(region.samples());
    const double step = 2.0 * M_PI / K;
    const double scale = 1.0 + sigma_max(M);
    const auto idx = local_extrema(region.support, maxima, 16, scale * step);
    double best = maxima ? -1e300 : 1e300;
    for (int k : idx) {
        const double lo = region.angles[k] - step;
        const double hi = region.angles[k] + step;
        auto f = [&](double t) {
            const double v = support_at(M, t);
            return maxima ? v : -v;
        };
        const double v = detail::golden_max(f, lo, hi).second;
        const double value = maxima ? v : -v;
        best = maxima ? std::max(best, value) : std::min(best, value);
    }
    if (idx.empty()) best = maxima ? region.support.maxCoeff() : region.support.minCoeff();
    return best;
}

ConvexRegion singleton_region(Complex z, int K, bool degenerate) {
    ConvexRegion r;
    r.angles.resize(K);
    r.support.resize(K);
    r.boundary.resize(K);
    for (int k = 0; k < K; ++k) {
        const double theta = 2.0 * M_PI * k / K;
        r.angles[k] = theta;
        r.support[k] = std::cos(theta) * z.real() + std::sin(theta) * z.imag();
        r.boundary[k] = z;
    }
    r.degenerate = degenerate;
    return r;
}

} // namespace

double ConvexRegion::containment_violation(Complex z) const {
    double worst = -1e300;
    for (Index k = 0; k < samples(); ++k) {
        const double proj = std::cos(angles[k]) * z.real() + std::sin(angles[k]) * z.imag();
        worst = std::max(worst, proj - support[k]);
    }
    return worst;
}

double support_at(const Matrix& M, double theta) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm_part(M, theta), Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw EigFailure("Hermitian eigensolver failed");
    return eig.eigenvalues()[M.rows() - 1];
}

ConvexRegion numrange(const Matrix& M, int K) {
    if (M.rows() != M.cols()) throw DimMismatch("numerical range needs a square matrix");
    if (K < 8) throw BadSpec("angle grid K must be at least 8");
    ConvexRegion r;
    r.angles.resize(K);
    r.support.resize(K);
    r.boundary.resize(K);
    for (int k = 0; k < K; ++k) {
        const double theta = 2.0 * M_PI * k / K;
        const auto [lam, x] = top_eigpair(herm_part(M, theta));
        r.angles[k] = theta;
        r.support[k] = lam;
        r.boundary[k] = (x.adjoint() * (M * x))(0, 0);
    }
    return r;
}

double numerical_radius(const Matrix& M, int K) {
    const ConvexRegion region = numrange(M, K);
    return std::max(0.0, refine_support_extremum(M, region, true));
}

double origin_distance(const Matrix& M, int K) {
    const ConvexRegion region = numrange(M, K);
    const double hmin = refine_support_extremum(M, region, false);
    return std::max(0.0, -hmin);
}

ConvexRegion a_numrange(const AOperator& op, int K) {
    return numrange(reduce(op).mat, K);
}

double a_numerical_radius(const AOperator& op) {
    return numerical_radius(reduce(op).mat);
}

double a_spectral_radius(const AOperator& op) {
    const Matrix mat = reduce(op).mat;
    Eigen::ComplexEigenSolver<Matrix> eig(mat, false);
    if (eig.info() != Eigen::Success) throw EigFailure("eigenvalue solver failed");
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix maximal_subspace(const Matrix& M, double cluster_tol) {
    const Index n = M.cols();
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    const double smax = sv[0];
    if (smax <= 1e-14 * (1.0 + frob(M))) {
        // M = 0: every unit vector is maximizing.
        return Matrix::Identity(n, n);
    }
    Index s = 0;
    while (s < sv.size() && sv[s] >= smax * (1.0 - cluster_tol)) ++s;
    return svd.matrixV().leftCols(s);
}

Matrix maximal_compression(const Matrix& M, double cluster_tol) {
    const Matrix X = maximal_subspace(M, cluster_tol);
    return X.adjoint() * M * X;
}

ConvexRegion a_max_numrange(const AOperator& op, int K, double cluster_tol) {
    const Matrix mat = reduce(op).mat;
    if (sigma_max(mat) <= 1e-14 * (1.0 + frob(op.T)))
        return singleton_region(Complex(0.0, 0.0), K, true);
    return numrange(maximal_compression(mat, cluster_tol), K);
}

double omega_max(const AOperator& op) {
    const Matrix mat = reduce(op).mat;
    if (sigma_max(mat) <= 1e-14 * (1.0 + frob(op.T))) return 0.0;
    return numerical_radius(maximal_compression(mat));
}

double m_max(const AOperator& op) {
    const Matrix mat = reduce(op).mat;
    if (sigma_max(mat) <= 1e-14 * (1.0 + frob(op.T))) return 0.0;
    return origin_distance(maximal_compression(mat));
}

double boundary_distance(const Matrix& M, const ConvexRegion& region, Complex z) {
    // min over theta of h(theta) - Re(e^{-i theta} z): the distance from an
    // interior point to the boundary, negative when z escapes a halfplane.
    const int K = int(region.samples());
    RealVector slack(K);
    for (int k = 0; k < K; ++k) {
        const double proj =
            std::cos(region.angles[k]) * z.real() + std::sin(region.angles[k]) * z.imag();
        slack[k] = region.support[k] - proj;
    }
    const double step = 2.0 * M_PI / K;
    const double scale = 1.0 + region.support.cwiseAbs().maxCoeff() + std::abs(z);
    const auto idx = local_extrema(slack, false, 8, scale * step);
    double best = slack.minCoeff();
    for (int k : idx) {
        auto f = [&](double t) {
            return support_at(M, t) - (std::cos(t) * z.real() + std::sin(t) * z.imag());
        };
        best = std::min(best,
                        detail::golden_min(f, region.angles[k] - step, region.angles[k] + step).second);
    }
    return best;
}

RangeSummary summarize_ranges(const AOperator& op, int K, double cluster_tol) {
    RangeSummary s;
    s.reduced = reduce(op).mat;
    s.norm_a = sigma_max(s.reduced);
    s.degenerate = s.norm_a <= 1e-14 * (1.0 + frob(op.T));

    if (s.degenerate) {
        // zero to working precision: every invariant of the zero operator
        s.norm_a = 0.0;
        s.r_a = 0.0;
        s.omega_a = 0.0;
        s.wa = singleton_region(Complex(0.0, 0.0), K, true);
        s.compression = Matrix::Zero(1, 1);
        s.max_subspace_dim = s.reduced.rows();
        s.wmax = singleton_region(Complex(0.0, 0.0), K, true);
        s.omega_max = 0.0;
        s.m_max = 0.0;
        s.power_norms.assign(5, 0.0);
        return s;
    }

    Eigen::ComplexEigenSolver<Matrix> eig(s.reduced, false);
    if (eig.info() != Eigen::Success) throw EigFailure("eigenvalue solver failed");
    s.r_a = eig.eigenvalues().cwiseAbs().maxCoeff();

    s.wa = numrange(s.reduced, K);
    s.omega_a = std::max(0.0, refine_support_extremum(s.reduced, s.wa, true));

    {
        const Matrix X = maximal_subspace(s.reduced, cluster_tol);
        s.max_subspace_dim = X.cols();
        s.compression = X.adjoint() * s.reduced * X;
        s.wmax = numrange(s.compression, K);
        s.omega_max = std::max(0.0, refine_support_extremum(s.compression, s.wmax, true));
        s.m_max = std::max(0.0, -refine_support_extremum(s.compression, s.wmax, false));
    }

    Matrix power = s.reduced;
    s.power_norms.push_back(s.norm_a);
    for (int k = 2; k <= 5; ++k) {
        power = power * s.reduced;
        s.power_norms.push_back(sigma_max(power));
    }
    return s;
}

NormaloidVerdict normaloid_verdict(const RangeSummary& s, double tol) {
    NormaloidVerdict v;
    const double scale = decision_scale(s.norm_a);
    v.tol_used = tol;

    auto put = [&](const std::string& name, double lhs, double rhs, double gap) {
        v.criteria[name] = {lhs, rhs, gap, gap <= tol};
    };

    put("spectral_radius_attains_norm", s.r_a, s.norm_a, (s.norm_a - s.r_a) / scale);

    double power_gap = 0.0;
    for (int k = 2; k <= 5; ++k) {
        const double ideal = std::pow(s.norm_a, k);
        power_gap = std::max(power_gap, std::abs(s.power_norms[k - 1] - ideal) /
                                            std::max(ideal, 1e-300));
    }
    put("power_norms_multiplicative", s.power_norms.back(), std::pow(s.norm_a, 5), power_gap);

    put("radius_attains_norm", s.omega_a, s.norm_a, (s.norm_a - s.omega_a) / scale);

    // Sup of |z| over the sampled closure of the range, refined over angles.
    double attained = 0.0;
    {
        RealVector moduli(s.wa.samples());
        for (Index k = 0; k < s.wa.samples(); ++k) moduli[k] = std::abs(s.wa.boundary[k]);
        attained = moduli.maxCoeff();
        const double step = 2.0 * M_PI / double(s.wa.samples());
        for (int k : local_extrema(moduli, true, 8, scale * step)) {
            auto f = [&](double t) {
                const Vector x = top_eigpair(herm_part(s.reduced, t)).second;
                return std::abs(Complex((x.adjoint() * (s.reduced * x))(0, 0)));
            };
            attained = std::max(attained,
                                detail::golden_max(f, s.wa.angles[k] - step,
                                                   s.wa.angles[k] + step).second);
        }
    }
    put("norm_circle_meets_closure", attained, s.norm_a, (s.norm_a - attained) / scale);

    // Some maximal-range point must touch the boundary of W_A. Rank the
    // candidates by the cheap grid slack, then refine only the near-best.
    double touch = 1e300;
    {
        std::vector<std::pair<double, Complex>> coarse;
        Complex last(1e300, 1e300);
        for (Index k = 0; k < s.wmax.samples(); ++k) {
            const Complex z = s.wmax.boundary[k];
            if (std::abs(z - last) < 1e-12 * scale) continue;
            last = z;
            double worst = 1e300;
            for (Index j = 0; j < s.wa.samples(); ++j) {
                const double proj = std::cos(s.wa.angles[j]) * z.real() +
                                    std::sin(s.wa.angles[j]) * z.imag();
                worst = std::min(worst, s.wa.support[j] - proj);
            }
            coarse.emplace_back(std::abs(worst), z);
        }
        std::sort(coarse.begin(), coarse.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const double cutoff = coarse.empty() ? 0.0 : coarse.front().first + 1e-4 * scale;
        int refined = 0;
        for (const auto& [approx, z] : coarse) {
            if (approx > cutoff || refined >= 8) break;
            ++refined;
            touch = std::min(touch, std::abs(boundary_distance(s.reduced, s.wa, z)));
            if (touch <= 1e-15 * scale) break;
        }
    }
    put("max_range_meets_boundary", touch, 0.0, touch / scale);

    put("max_radius_attains_radius", s.omega_max, s.omega_a,
        (s.omega_a - s.omega_max) / scale);

    int yes = 0, no = 0, gray = 0;
    for (const auto& [name, c] : v.criteria) {
        if (c.gap <= tol) ++yes;
        else if (c.gap >= kInconclusiveBand * tol) ++no;
        else ++gray;
    }
    v.is_normaloid = yes > no;
    v.inconclusive = gray > 0 || (yes > 0 && no > 0);
    return v;
}

NormaloidVerdict normaloid_verdict(const AOperator& op, double tol) {
    return normaloid_verdict(summarize_ranges(op), tol);
}

std::string region_csv(const ConvexRegion& region) {
    std::ostringstream out;
    out.precision(17);
    out << "theta,support,re,im\n";
    for (Index k = 0; k < region.samples(); ++k) {
        out << region.angles[k] << ',' << region.support[k] << ','
            << region.boundary[k].real() << ',' << region.boundary[k].imag() << '\n';
    }
    return out.str();
}

std::string regions_svg(const ConvexRegion& wa, const ConvexRegion& wmax,
                        Complex center, double norm_a) {
    double xmin = -norm_a, xmax = norm_a, ymin = -norm_a, ymax = norm_a;
    auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    };
    for (Index k = 0; k < wa.samples(); ++k)
        grow(wa.boundary[k].real(), -wa.boundary[k].imag());
    for (Index k = 0; k < wmax.samples(); ++k)
        grow(wmax.boundary[k].real(), -wmax.boundary[k].imag());
    grow(center.real(), -center.imag());
    grow(0.0, 0.0);

    const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
    const double pad = 0.1 * span;
    xmin -= pad; ymin -= pad; xmax += pad; ymax += pad;
    const double sw = 0.004 * span;

    std::ostringstream out;
    out.precision(8);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin << ' ' << ymin
        << ' ' << (xmax - xmin) << ' ' << (ymax - ymin) << "\">\n";
    out << "  <circle cx=\"0\" cy=\"0\" r=\"" << norm_a
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" << sw
        << "\" stroke-dasharray=\"" << 4 * sw << ' ' << 3 * sw << "\"/>\n";

    auto polygon = [&](const ConvexRegion& region, const char* style) {
        out << "  <polygon points=\"";
        for (Index k = 0; k < region.samples(); ++k) {
            if (k) out << ' ';
            out << region.boundary[k].real() << ',' << -region.boundary[k].imag();
        }
        out << "\" " << style << " stroke-width=\"" << sw << "\"/>\n";
    };
    polygon(wa, "fill=\"none\" stroke=\"#1f77b4\"");
    polygon(wmax, "fill=\"#ff7f0e\" fill-opacity=\"0.35\" stroke=\"#ff7f0e\"");

    const double cs = 3.0 * sw;
    out << "  <path d=\"M " << center.real() - cs << ' ' << -center.imag() << " L "
        << center.real() + cs << ' ' << -center.imag() << " M " << center.real() << ' '
        << -center.imag() - cs << " L " << center.real() << ' ' << -center.imag() + cs
        << "\" stroke=\"#d62728\" stroke-width=\"" << sw << "\"/>\n";
    out << "  <circle cx=\"0\" cy=\"0\" r=\"" << 1.5 * sw << "\" fill=\"#000000\"/>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace semih
