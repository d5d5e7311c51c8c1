#include "semih/detail/optim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace semih::detail {

double Rng::gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    has_spare_ = true;
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

Vector Rng::gaussian_vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = cgauss();
    return v;
}

Matrix Rng::gaussian_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = cgauss();
    return m;
}

Matrix Rng::haar_unitary(Index n) {
    const Matrix g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= a > 0 ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step on the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi, double xtol, int max_iter) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

NelderMeadResult nelder_mead_2d(const std::function<double(const Eigen::Vector2d&)>& f,
                                const Eigen::Vector2d& start, double init_size,
                                double size_tol, int max_iter) {
    using V = Eigen::Vector2d;
    struct Pt { V x; double v; };
    std::array<Pt, 3> s;
    int evals = 0;
    auto eval = [&](const V& x) { ++evals; return f(x); };

    s[0] = {start, eval(start)};
    s[1] = {start + V(init_size, 0.0), 0.0};
    s[2] = {start + V(0.0, init_size), 0.0};
    s[1].v = eval(s[1].x);
    s[2].v = eval(s[2].x);

    for (int it = 0; it < max_iter; ++it) {
        std::sort(s.begin(), s.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
        const double diam = std::max((s[1].x - s[0].x).norm(), (s[2].x - s[0].x).norm());
        if (diam < size_tol) break;

        const V centroid = 0.5 * (s[0].x + s[1].x);
        const V refl = centroid + (centroid - s[2].x);
        const double fr = eval(refl);
        if (fr < s[0].v) {
            const V exp_ = centroid + 2.0 * (centroid - s[2].x);
            const double fe = eval(exp_);
            s[2] = fe < fr ? Pt{exp_, fe} : Pt{refl, fr};
        } else if (fr < s[1].v) {
            s[2] = {refl, fr};
        } else {
            const V contr = centroid + 0.5 * ((fr < s[2].v ? refl : s[2].x) - centroid);
            const double fc = eval(contr);
            if (fc < std::min(fr, s[2].v)) {
                s[2] = {contr, fc};
            } else {
                // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].v = eval(s[i].x);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
    return {s[0].x, s[0].v, evals};
}

namespace {

struct Cut {
    Eigen::Vector2d at;
    double value;
    Eigen::Vector2d grad;
};

// Exact minimum of the affine cut over a square of half-width h at center c.
double cut_min_on_box(const Cut& cut, const Eigen::Vector2d& c, double h) {
    const double base = cut.value + cut.grad.dot(c - cut.at);
    return base - h * (std::abs(cut.grad[0]) + std::abs(cut.grad[1]));
}

struct Box {
    Eigen::Vector2d center;
    double half;
    double lb;
};

struct BoxOrder {
    bool operator()(const Box& a, const Box& b) const { return a.lb > b.lb; }
};

} // namespace

CertifyResult certify_min_box(
    const std::function<std::pair<double, Eigen::Vector2d>(const Eigen::Vector2d&)>& g,
    double radius, double best_value, double target_gap, int max_evals) {
    CertifyResult out;
    out.best_value = best_value;
    if (radius <= 0.0) {
        out.lower_bound = best_value;
        out.certified = true;
        return out;
    }

    std::vector<Cut> cuts;
    cuts.reserve(1024);
    auto eval = [&](const Eigen::Vector2d& x) {
        ++out.evals;
        auto [v, grad] = g(x);
        cuts.push_back({x, v, grad});
        if (v < best_value) {
            best_value = v;
            out.best_value = v;
            out.best_point = x;
        }
        return v;
    };
    auto box_lb = [&](const Eigen::Vector2d& c, double h) {
        // Every cut underestimates g; the center cut encodes the Lipschitz
        // bound whenever |grad| = 1, so no separate ball bound is needed.
        double lb = -std::numeric_limits<double>::infinity();
        for (const Cut& cut : cuts) lb = std::max(lb, cut_min_on_box(cut, c, h));
        return lb;
    };

    std::priority_queue<Box, std::vector<Box>, BoxOrder> queue;
    eval(Eigen::Vector2d::Zero());
    queue.push({Eigen::Vector2d::Zero(), radius, box_lb(Eigen::Vector2d::Zero(), radius)});

    while (!queue.empty()) {
        Box box = queue.top();
        // Re-tighten against cuts added since this box was queued.
        box.lb = box_lb(box.center, box.half);
        if (box.lb >= best_value - target_gap) {
            queue.pop();
            continue;
        }
        out.lower_bound = box.lb;
        if (out.evals >= max_evals) return out;
        queue.pop();

        eval(box.center);
        const double h = box.half * 0.5;
        for (int sx = -1; sx <= 1; sx += 2)
            for (int sy = -1; sy <= 1; sy += 2) {
                const Eigen::Vector2d c = box.center + h * Eigen::Vector2d(sx, sy);
                queue.push({c, h, box_lb(c, h)});
            }
    }
    out.lower_bound = best_value - target_gap;
    out.certified = true;
    return out;
}

} // namespace semih::detail
