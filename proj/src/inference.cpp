#include "shrinkpath/inference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "shrinkpath/paths.hpp"

namespace shrinkpath {

namespace {

// Lentz continued fraction for the incomplete beta (Numerical Recipes form).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    return h;  // converged to working precision in practice long before kMaxIter
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_cdf(double x, unsigned df1, unsigned df2) {
    if (x <= 0.0) return 0.0;
    const double d1 = df1, d2 = df2;
    return incomplete_beta(d1 / 2.0, d2 / 2.0, d1 * x / (d1 * x + d2));
}

double f_quantile(unsigned df1, unsigned df2, double prob) {
    if (df1 < 1 || df2 < 1) throw std::invalid_argument("f_quantile: degrees of freedom >= 1");
    if (!(prob > 0.0 && prob < 1.0))
        throw std::invalid_argument("f_quantile: prob must lie in (0,1)");

    double lo = 0.0, hi = 1.0;
    while (f_cdf(hi, df1, df2) < prob && hi < 1e300) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f_cdf(mid, df1, df2) < prob ? lo : hi) = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, lo)) break;
    }
    return 0.5 * (lo + hi);
}

double mahalanobis2(const EllipseSpec& spec, Point2 pt) {
    const auto& v = spec.cov2;
    const double det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    if (det <= 0.0) throw std::runtime_error("degenerate covariance block");
    const double dx = pt.x - spec.center.x, dy = pt.y - spec.center.y;
    return (v[1][1] * dx * dx - 2.0 * v[0][1] * dx * dy + v[0][0] * dy * dy) / det;
}

EllipseSpec confidence_ellipse(const CanonicalForm& cf, std::size_t i, std::size_t j,
                               const std::vector<double>& levels, const ShrinkagePath& path,
                               const std::string& name_i, const std::string& name_j,
                               std::size_t boundary_points) {
    if (i == j) throw std::invalid_argument("confidence_ellipse: indices must differ");
    if (i >= cf.p || j >= cf.p) throw std::invalid_argument("confidence_ellipse: index out of range");
    if (cf.n < cf.p + 2) throw std::invalid_argument("confidence_ellipse: needs n - p - 1 >= 1");
    for (double lv : levels)
        if (!(lv > 0.0 && lv < 1.0))
            throw std::invalid_argument("confidence level outside (0,1)");

    EllipseSpec spec;
    spec.pair = {i, j};
    spec.names = {name_i.empty() ? "b" + std::to_string(i + 1) : name_i,
                  name_j.empty() ? "b" + std::to_string(j + 1) : name_j};
    spec.levels = levels;
    spec.m_star = path.m_star;
    spec.center = {cf.beta_ols[i], cf.beta_ols[j]};

    // 2x2 block of sigma2_unb G Lambda^{-1} G'
    auto cov_entry = [&](std::size_t r, std::size_t s) {
        double acc = 0.0;
        for (std::size_t k = 0; k < cf.p; ++k)
            acc += cf.g(r, k) * cf.g(s, k) / cf.lambda[k];
        return cf.sigma2_unb * acc;
    };
    spec.cov2[0][0] = cov_entry(i, i);
    spec.cov2[0][1] = spec.cov2[1][0] = cov_entry(i, j);
    spec.cov2[1][1] = cov_entry(j, j);

    const double det = spec.cov2[0][0] * spec.cov2[1][1] - spec.cov2[0][1] * spec.cov2[0][1];
    if (spec.cov2[0][0] <= 0.0 || det <= 0.0)
        throw std::runtime_error("degenerate covariance block for pair (" + spec.names[0] +
                                 ", " + spec.names[1] + ")");

    // Cholesky of cov2: boundary = center + r L (cos t, sin t)'
    const double l11 = std::sqrt(spec.cov2[0][0]);
    const double l21 = spec.cov2[0][1] / l11;
    const double l22 = std::sqrt(spec.cov2[1][1] - l21 * l21);

    const unsigned df2 = static_cast<unsigned>(cf.n - cf.p - 1);
    for (double lv : levels) {
        const double r = std::sqrt(2.0 * f_quantile(2, df2, lv));
        std::vector<Point2> ring;
        ring.reserve(boundary_points);
        for (std::size_t k = 0; k < boundary_points; ++k) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(boundary_points);
            const double z1 = std::cos(t), z2 = std::sin(t);
            ring.push_back({spec.center.x + r * l11 * z1,
                            spec.center.y + r * (l21 * z1 + l22 * z2)});
        }
        spec.boundaries.push_back(std::move(ring));
    }

    spec.overlay.reserve(path.size());
    for (std::size_t k = 0; k < path.size(); ++k) {
        const Vector beta = coef_at_delta(cf, path.deltas[k]);
        spec.overlay.push_back({beta[i], beta[j]});
        if (path.lattice[k] == path.m_star)
            spec.knot_point = spec.overlay.back();
    }
    return spec;
}

}  // namespace shrinkpath
