#include "semih/variational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "semih/detail/optim.hpp"

namespace semih {

namespace {

using detail::Rng;

std::pair<double, Eigen::Vector2d> sigma_max_with_subgrad(const Matrix& M) {
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double value = svd.singularValues()[0];
    const Complex s = (svd.matrixU().col(0).adjoint() * svd.matrixV().col(0))(0, 0);
    // d sigma = -Re(d lambda * u^* v): the active branch is affine in lambda.
    return {value, Eigen::Vector2d(-s.real(), s.imag())};
}

double sigma_max(const Matrix& m) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues()[0];
}

Matrix shifted(const Matrix& red, Complex lambda) {
    return red - lambda * Matrix::Identity(red.rows(), red.cols());
}

double distance_formula_reduced(const Matrix& red) {
    const Index r = red.rows();
    if (r == 1) return 0.0;
    const Matrix gram = red.adjoint() * red;
    const double nrm = sigma_max(red);
    const double nsq = nrm * nrm;

    auto value = [&](const Vector& y) {
        const Complex w = (y.adjoint() * (red * y))(0, 0);
        const double quad = std::real((y.adjoint() * (gram * y))(0, 0));
        return quad - std::norm(w);
    };

    auto ascend = [&](Vector y) {
        y.normalize();
        double fy = value(y);
        double step = 0.5 / (1.0 + nsq);
        for (int it = 0; it < 400; ++it) {
            const Complex w = (y.adjoint() * (red * y))(0, 0);
            Vector grad = gram * y - std::conj(w) * (red * y) -
                          w * (red.adjoint() * y);
            grad -= y * (y.adjoint() * grad)(0, 0);
            if (grad.norm() <= 1e-14 * (1.0 + nsq)) break;
            bool moved = false;
            for (int h = 0; h < 50; ++h) {
                Vector trial = y + step * grad;
                trial.normalize();
                const double ft = value(trial);
                if (ft > fy) {
                    y = trial;
                    fy = ft;
                    step *= 1.25;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        // Alternating polish: best scalar for y, then best y for that scalar.
        for (int it = 0; it < 60; ++it) {
            const Complex lambda = (y.adjoint() * (red * y))(0, 0);
            Eigen::JacobiSVD<Matrix> svd(shifted(red, lambda), Eigen::ComputeThinV);
            Vector cand = svd.matrixV().col(0);
            const double fc = value(cand);
            if (fc > fy + 1e-18 * (1.0 + nsq)) {
                y = cand;
                fy = fc;
            } else {
                break;
            }
        }
        return fy;
    };

    double best = 0.0;
    Eigen::JacobiSVD<Matrix> svd(red, Eigen::ComputeThinV);
    for (Index j = 0; j < r; ++j) best = std::max(best, ascend(svd.matrixV().col(j)));
    Rng rng(0xd157f0c5u);
    for (int k = 0; k < 256; ++k) best = std::max(best, ascend(rng.gaussian_vector(r)));
    return std::max(best, 0.0);
}

struct CenterPieces {
    Matrix red;
    double norm_a = 0.0;
};

CenterPieces pieces(const AOperator& op) {
    CenterPieces p;
    p.red = reduce(op).mat;
    p.norm_a = sigma_max(p.red);
    // the same zero-to-working-precision rule the range summary applies
    if (p.norm_a <= 1e-14 * (1.0 + frob(op.T))) p.norm_a = 0.0;
    return p;
}

MassCenter center_from_reduced(const Matrix& red, double norm_a, double tol) {
    MassCenter out;
    if (norm_a <= 1e-14) {
        out.formula_d2 = distance_formula_reduced(red);
        return out;
    }

    auto g = [&](const Eigen::Vector2d& x) {
        return sigma_max(shifted(red, Complex(x[0], x[1])));
    };

    // Multi-start simplex; convexity of sigma_max(red - lambda I) makes any
    // local minimum global, the extra starts only speed things up.
    std::vector<Eigen::Vector2d> starts;
    const Complex mean = red.trace() / double(red.rows());
    starts.emplace_back(mean.real(), mean.imag());
    {
        const ConvexRegion coarse = numrange(red, 64);
        const Complex centroid = coarse.boundary.mean();
        starts.emplace_back(centroid.real(), centroid.imag());
    }
    starts.emplace_back(0.0, 0.0);

    // Simplex geometry lives in lambda-space, which scales with the norm;
    // the certified-gap target keeps its absolute floor for tiny operators.
    const double lscale = norm_a;
    Eigen::Vector2d best_x = starts[0];
    double best_v = 1e300;
    int evals = 0;
    for (const auto& s0 : starts) {
        const auto res = detail::nelder_mead_2d(g, s0, 0.25 * lscale, 1e-12 * lscale, 800);
        evals += res.evals;
        if (res.value < best_v) {
            best_v = res.value;
            best_x = res.x;
        }
    }
    // One tight restart from the winner to squeeze out simplex drift.
    {
        const auto res =
            detail::nelder_mead_2d(g, best_x, 1e-7 * lscale, 1e-13 * lscale, 400);
        evals += res.evals;
        if (res.value < best_v) {
            best_v = res.value;
            best_x = res.x;
        }
    }

    const double target_gap = tol * (1.0 + norm_a);
    const auto cert = detail::certify_min_box(
        [&](const Eigen::Vector2d& x) {
            return sigma_max_with_subgrad(shifted(red, Complex(x[0], x[1])));
        },
        2.0 * norm_a, best_v, target_gap, 60000);
    evals += cert.evals;
    if (cert.best_value < best_v) {
        // the certification sweep stumbled on a better point; polish it
        const auto res =
            detail::nelder_mead_2d(g, cert.best_point, 1e-6 * lscale, 1e-13 * lscale, 400);
        evals += res.evals;
        if (res.value < best_v) {
            best_v = res.value;
            best_x = res.x;
        }
        if (cert.best_value < best_v) {
            best_v = cert.best_value;
            best_x = cert.best_point;
        }
    }

    out.c = Complex(best_x[0], best_x[1]);
    out.d = best_v;
    out.iterations = evals;
    out.certified_gap = std::max(best_v - cert.lower_bound, 0.0);
    if (cert.certified) out.certified_gap = std::min(out.certified_gap, target_gap);
    out.formula_d2 = distance_formula_reduced(red);
    if (!cert.certified)
        throw NoConvergence("center-of-mass certification hit the evaluation cap", out);
    return out;
}

} // namespace

MassCenter center_of_mass(const AOperator& op, double tol) {
    op.require_bounded();
    const auto p = pieces(op);
    return center_from_reduced(p.red, p.norm_a, tol);
}

MassCenter center_of_mass(const Matrix& M, double tol) {
    if (M.rows() != M.cols()) throw DimMismatch("center of mass needs a square matrix");
    return center_from_reduced(M, sigma_max(M), tol);
}

double distance_formula(const AOperator& op) {
    op.require_bounded();
    return distance_formula_reduced(reduce(op).mat);
}

double distance_formula(const Matrix& M) {
    if (M.rows() != M.cols()) throw DimMismatch("distance formula needs a square matrix");
    return distance_formula_reduced(M);
}

TripleCheck zero_in_wmax_check(const AOperator& op, double tol) {
    op.require_bounded();
    const auto p = pieces(op);
    TripleCheck out;

    out.m_max_value = m_max(op);
    const double s1 = decision_scale(p.norm_a);
    const double s2 = s1 * s1;
    out.in_wmax = out.m_max_value <= tol * s1;
    out.unclear[0] = !out.in_wmax && out.m_max_value < kInconclusiveBand * tol * s1;

    const double radius = 2.0 * p.norm_a;
    // sigma_max(red + lambda I), lambda = (x0, x1); the shift transfers to
    // the reduced space, so |T + lambda|_A is read off the small matrix.
    auto norm_shift = [&](const Eigen::Vector2d& x) {
        return sigma_max(shifted(p.red, Complex(-x[0], -x[1])));
    };
    auto slack_sq = [&](const Eigen::Vector2d& x) {
        const double v = norm_shift(x);
        return v * v - p.norm_a * p.norm_a - x.squaredNorm();
    };
    auto slack_norm = [&](const Eigen::Vector2d& x) { return norm_shift(x) - p.norm_a; };


    auto minimize = [&](const std::function<double(const Eigen::Vector2d&)>& f) {
        double best = f(Eigen::Vector2d::Zero());
        std::vector<std::pair<double, Eigen::Vector2d>> grid;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                const double rho = radius * (j + 1) / 8.0;
                const double phi = 2.0 * M_PI * i / 8.0;
                const Eigen::Vector2d x(rho * std::cos(phi), rho * std::sin(phi));
                grid.emplace_back(f(x), x);
            }
        std::sort(grid.begin(), grid.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int k = 0; k < 3 && k < int(grid.size()); ++k) {
            const auto res = detail::nelder_mead_2d(f, grid[k].second, 0.1 * (1.0 + radius),
                                                    1e-11 * (1.0 + radius), 500);
            best = std::min(best, res.value);
        }
        return std::min(best, grid.front().first);
    };

    out.worst_pythag_slack = minimize(slack_sq);
    out.worst_norm_slack = minimize(slack_norm);

    out.pythag_all = out.worst_pythag_slack >= -tol * s2;
    out.unclear[1] = !out.pythag_all && out.worst_pythag_slack > -kInconclusiveBand * tol * s2;
    out.norm_min = out.worst_norm_slack >= -tol * s1;
    out.unclear[2] = !out.norm_min && out.worst_norm_slack > -kInconclusiveBand * tol * s1;
    return out;
}

PythagoreanCheck pythagorean_check(const AOperator& op, double tol) {
    op.require_bounded();
    const auto p = pieces(op);
    PythagoreanCheck out;

    const MassCenter mc = center_from_reduced(p.red, p.norm_a, kCenterGapTol);
    const double s1 = decision_scale(p.norm_a);
    const double s2 = s1 * s1;

    // Membership of c in the maximal range region, with angle refinement.
    double slack;
    if (p.norm_a <= 1e-14) {
        slack = std::abs(mc.c);
    } else {
        const Matrix B = maximal_compression(p.red);
        const ConvexRegion wmax = numrange(B, kGridK);
        slack = wmax.containment_violation(mc.c);
        const double step = 2.0 * M_PI / double(wmax.samples());
        RealVector proj_gap(wmax.samples());
        for (Index k = 0; k < wmax.samples(); ++k) {
            proj_gap[k] = std::cos(wmax.angles[k]) * mc.c.real() +
                          std::sin(wmax.angles[k]) * mc.c.imag() - wmax.support[k];
        }
        for (Index k = 0; k < wmax.samples(); ++k) {
            const double prev = proj_gap[(k + wmax.samples() - 1) % wmax.samples()];
            const double next = proj_gap[(k + 1) % wmax.samples()];
            if (proj_gap[k] >= prev && proj_gap[k] >= next &&
                proj_gap[k] >= slack - 1e-4 * s1) {
                auto f = [&](double t) {
                    return std::cos(t) * mc.c.real() + std::sin(t) * mc.c.imag() -
                           support_at(B, t);
                };
                slack = std::max(slack,
                                 detail::golden_max(f, wmax.angles[k] - step,
                                                    wmax.angles[k] + step).second);
            }
        }
    }
    out.membership_slack = slack;
    out.in_wmax = slack <= tol * s1;

    out.identity_gap = std::abs(mc.d * mc.d + std::norm(mc.c) - p.norm_a * p.norm_a) / s2;
    out.identity_holds = out.identity_gap <= kEqualityTol;

    const bool member_gray = !out.in_wmax && slack < kInconclusiveBand * tol * s1;
    const bool ident_gray =
        !out.identity_holds && out.identity_gap < kInconclusiveBand * kEqualityTol;
    out.unclear = member_gray || ident_gray;
    return out;
}

InequalityReport inequality_suite(const AOperator& op, double tol) {
    op.require_bounded();
    const auto p = pieces(op);
    InequalityReport rep;

    const double norm = p.norm_a;
    const double omega = p.norm_a <= 1e-14 ? 0.0 : numerical_radius(p.red);
    double wmax_radius = 0.0, wmax_min = 0.0;
    if (p.norm_a > 1e-14) {
        const Matrix B = maximal_compression(p.red);
        wmax_radius = numerical_radius(B);
        wmax_min = origin_distance(B);
    }
    const MassCenter mc = center_from_reduced(p.red, p.norm_a, kCenterGapTol);
    const double cabs = std::abs(mc.c);
    const double d = mc.d;

    const double s1 = decision_scale(norm);
    const double s2 = s1 * s1;

    auto push = [&](const std::string& id, double slack, bool applicable) {
        InequalityEntry e;
        e.id = id;
        e.slack = slack;
        e.applicable = applicable;
        e.holds = !applicable || slack >= -tol;
        rep.entries.push_back(e);
        if (applicable) {
            rep.all_hold = rep.all_hold && e.holds;
            rep.worst_slack = std::min(rep.worst_slack, slack);
        }
    };

    push("radius_lower", (omega - 0.5 * norm) / s1, true);
    push("radius_upper", (norm - omega) / s1, true);
    push("center_below_m_max", (wmax_min - cabs) / s1, true);
    push("m_max_below_omega_max", (wmax_radius - wmax_min) / s1, true);
    push("omega_max_below_norm", (norm - wmax_radius) / s1, true);
    push("norm_sq_below_d_sq_plus_m_max_sq",
         (d * d + wmax_min * wmax_min - norm * norm) / s2, true);
    push("m_max_below_omega", (omega * omega - wmax_min * wmax_min) / s2, true);
    const bool center_nonzero = cabs > 10.0 * tol * s1;
    push("norm_below_m_max_plus_half_dsq_over_c",
         center_nonzero ? (wmax_min + 0.5 * d * d / cabs - norm) / s1 : 0.0,
         center_nonzero);
    const bool center_zero = cabs <= tol * s1;
    push("norm_equals_d_when_centered", center_zero ? -std::abs(norm - d) / s1 : 0.0,
         center_zero);
    return rep;
}

} // namespace semih
