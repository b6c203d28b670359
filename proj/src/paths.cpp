#include "shrinkpath/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shrinkpath/risk.hpp"

namespace shrinkpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta_range(const Vector& delta) {
    for (double d : delta)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("delta component outside [0,1]: " +
                                        format_double(d));
}

// Lattice 0, 1/steps, ..., p with the knot spliced in when off-lattice.
Vector make_lattice(std::size_t p, unsigned steps, std::optional<double> knot) {
    Vector lattice;
    lattice.reserve(p * steps + 2);
    for (std::size_t i = 0; i <= p * steps; ++i)
        lattice.push_back(static_cast<double>(i) / steps);
    if (knot) {
        auto pos = std::lower_bound(lattice.begin(), lattice.end(), *knot);
        const bool on_lattice =
            (pos != lattice.end() && std::abs(*pos - *knot) < 1e-12) ||
            (pos != lattice.begin() && std::abs(*(pos - 1) - *knot) < 1e-12);
        if (!on_lattice) lattice.insert(pos, *knot);
    }
    return lattice;
}

// delta(m) on the two-piece spline through delta* at m*.
Vector efficient_delta_at(const Vector& delta_star, double m_star, std::size_t p, double m) {
    Vector d(p);
    const double pd = static_cast<double>(p);
    if (m_star <= 1e-9) {
        // knot at the OLS end: single piece from all-ones straight to zero
        for (std::size_t j = 0; j < p; ++j) d[j] = (pd - m) / pd;
    } else if (m <= m_star) {
        for (std::size_t j = 0; j < p; ++j)
            d[j] = 1.0 - (m / m_star) * (1.0 - delta_star[j]);
    } else {
        const double f = (pd - m) / (pd - m_star);
        for (std::size_t j = 0; j < p; ++j) d[j] = delta_star[j] * f;
    }
    for (double& v : d) v = std::clamp(v, 0.0, 1.0);
    return d;
}

}  // namespace

std::string to_string(PathKind kind) {
    switch (kind) {
        case PathKind::efficient: return "efficient";
        case PathKind::qm: return "qm";
        case PathKind::yonx: return "yonx";
    }
    return "?";
}

double mcal(const Vector& delta) {
    check_delta_range(delta);
    double sum = 0.0;
    for (double d : delta) sum += d;
    return static_cast<double>(delta.size()) - sum;
}

Vector coef_at_delta(const CanonicalForm& cf, const Vector& delta) {
    check_delta_range(delta);
    if (delta.size() != cf.p) throw std::invalid_argument("coef_at_delta: length mismatch");
    Vector dc(cf.p);
    for (std::size_t j = 0; j < cf.p; ++j) dc[j] = delta[j] * cf.c[j];
    return cf.g * dc;
}

Vector qm_delta(const CanonicalForm& cf, double q, double k) {
    if (k < 0.0) throw std::invalid_argument("qm_delta: k must be nonnegative");
    Vector d(cf.p);
    for (std::size_t j = 0; j < cf.p; ++j) {
        const double f = k * std::pow(cf.lambda[j], q - 1.0);
        d[j] = std::isinf(f) ? 0.0 : 1.0 / (1.0 + f);
    }
    return d;
}

double solve_k_for_m(const CanonicalForm& cf, double q, double m_target) {
    const double p = static_cast<double>(cf.p);
    if (m_target < 0.0 || m_target > p)
        throw std::invalid_argument("solve_k_for_m: target outside [0, p]");
    if (m_target == 0.0) return 0.0;
    if (m_target >= p) return kInf;

    auto m_of = [&](double k) { return mcal(qm_delta(cf, q, k)); };

    // m is strictly increasing in k; bracket, then bisect on ln k
    double lo = 1.0, hi = 1.0;
    while (m_of(lo) > m_target && lo > 1e-290) lo /= 16.0;
    while (m_of(hi) < m_target && hi < 1e290) hi *= 16.0;
    double k = std::sqrt(lo * hi);
    for (int it = 0; it < 200; ++it) {
        k = std::sqrt(lo * hi);
        const double mm = m_of(k);
        if (std::abs(mm - m_target) <= 1e-13) break;
        (mm < m_target ? lo : hi) = k;
    }
    return k;
}

ShrinkagePath build_efficient_path(const CanonicalForm& cf, unsigned steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");

    ShrinkagePath path;
    path.kind = PathKind::efficient;
    path.p = cf.p;
    path.steps = steps;
    path.delta_star = delta_knot(cf);
    path.m_star = mcal(path.delta_star);

    const double pd = static_cast<double>(cf.p);
    path.degenerate_knot = path.m_star <= 1e-9 || path.m_star >= pd - 1e-9;

    std::optional<double> knot;
    if (!path.degenerate_knot) knot = path.m_star;
    path.lattice = make_lattice(cf.p, steps, knot);

    path.deltas.reserve(path.lattice.size());
    for (double m : path.lattice)
        path.deltas.push_back(efficient_delta_at(path.delta_star, path.m_star, cf.p, m));
    return path;
}

ShrinkagePath build_qm_path(const CanonicalForm& cf, double q, unsigned steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");

    ShrinkagePath path;
    path.kind = PathKind::qm;
    path.p = cf.p;
    path.steps = steps;
    path.q = q;
    path.lattice = make_lattice(cf.p, steps, std::nullopt);

    const double pd = static_cast<double>(cf.p);
    path.deltas.reserve(path.lattice.size());
    path.k_values.reserve(path.lattice.size());
    for (double m : path.lattice) {
        if (m >= pd) {
            path.k_values.push_back(kInf);
            path.deltas.emplace_back(cf.p, 0.0);
            continue;
        }
        const double k = solve_k_for_m(cf, q, m);
        path.k_values.push_back(k);
        path.deltas.push_back(qm_delta(cf, q, k));
    }

    // knot of a qm path: lattice point of smallest -2logLR
    double best = kInf;
    std::size_t best_i = path.lattice.size() - 1;
    for (std::size_t i = 0; i < path.lattice.size(); ++i) {
        const double lr = neg2_log_lr(cf, path.deltas[i]);
        if (lr < best) {
            best = lr;
            best_i = i;
        }
    }
    path.m_star = path.lattice[best_i];
    path.delta_star = path.deltas[best_i];
    return path;
}

ShrinkagePath build_yonx_path(const StandardizedModel& model, unsigned steps) {
    if (model.p != 1) throw std::invalid_argument("yonx path requires p = 1");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");

    const CanonicalForm cf = canonicalize(model);

    ShrinkagePath path;
    path.kind = PathKind::yonx;
    path.p = 1;
    path.steps = steps;
    path.delta_star = delta_knot(cf);
    path.m_star = 1.0 - path.delta_star[0];
    path.degenerate_knot = path.m_star <= 1e-9 || path.m_star >= 1.0 - 1e-9;

    std::optional<double> knot;
    if (!path.degenerate_knot) knot = path.m_star;
    path.lattice = make_lattice(1, steps, knot);

    // both spline pieces are collinear when p = 1: delta(m) = 1 - m
    path.deltas.reserve(path.lattice.size());
    for (double m : path.lattice) path.deltas.push_back(Vector{1.0 - m});

    const double slope_ols = cf.beta_ols[0] * model.y_scale / model.x_scales[0];
    for (double m : {0.0, path.m_star, 2.0 * path.m_star}) {
        FittedLine line;
        line.m = m;
        line.slope = (1.0 - m) * slope_ols;
        line.intercept = model.y_mean - line.slope * model.x_means[0];
        path.display_lines.push_back(line);
    }
    return path;
}

}  // namespace shrinkpath
