#include "shrinkpath/model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace shrinkpath {

namespace {

double mean(const Vector& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample standard deviation, n-1 divisor.
double sample_sd(const Vector& v, double m) {
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

StandardizedModel standardize(const Table& table, const std::string& y_name,
                              const std::vector<std::string>& x_names) {
    if (x_names.empty()) throw std::invalid_argument("no predictor columns given");
    const std::size_t n = table.row_count();
    const std::size_t p = x_names.size();
    if (n < 5) throw std::invalid_argument("need at least 5 observations, got " +
                                           std::to_string(n));
    if (n <= p)
        throw std::invalid_argument("fat data unsupported: p = " + std::to_string(p) +
                                    " predictors require n > p observations (n = " +
                                    std::to_string(n) + ")");

    StandardizedModel m;
    m.n = n;
    m.p = p;
    m.y_name = y_name;
    m.x_names = x_names;

    const Vector& y_raw = table.column(y_name);
    m.y_mean = mean(y_raw);
    m.y_scale = sample_sd(y_raw, m.y_mean);
    if (m.y_scale <= 0.0)
        throw std::invalid_argument("zero-variance column: '" + y_name + "'");
    m.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.y[i] = (y_raw[i] - m.y_mean) / m.y_scale;

    m.x = Matrix(n, p);
    m.x_means.resize(p);
    m.x_scales.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        const Vector& col = table.column(x_names[j]);
        const double mu = mean(col);
        const double sd = sample_sd(col, mu);
        if (sd <= 0.0)
            throw std::invalid_argument("zero-variance column: '" + x_names[j] + "'");
        m.x_means[j] = mu;
        m.x_scales[j] = sd;
        for (std::size_t i = 0; i < n; ++i) m.x(i, j) = (col[i] - mu) / sd;
    }
    return m;
}

CanonicalForm canonicalize(const StandardizedModel& model) {
    const std::size_t n = model.n, p = model.p;
    SvdResult svd = jacobi_svd(model.x);

    constexpr double kRankTol = 1e-9;
    std::size_t deficient = 0;
    for (double s : svd.sigma)
        if (!(s > kRankTol * svd.sigma.front())) ++deficient;
    if (deficient > 0)
        throw std::invalid_argument("rank-deficient X: " + std::to_string(deficient) +
                                    " of " + std::to_string(p) +
                                    " dimensions below tolerance");

    // sign convention: largest-magnitude entry of each G column positive
    for (std::size_t j = 0; j < p; ++j) {
        std::size_t k = 0;
        for (std::size_t r = 1; r < p; ++r)
            if (std::abs(svd.v(r, j)) > std::abs(svd.v(k, j))) k = r;
        if (svd.v(k, j) < 0.0) {
            for (std::size_t r = 0; r < p; ++r) svd.v(r, j) = -svd.v(r, j);
            for (std::size_t r = 0; r < n; ++r) svd.u(r, j) = -svd.u(r, j);
        }
    }

    CanonicalForm cf;
    cf.n = n;
    cf.p = p;
    cf.g = svd.v;
    cf.h = svd.u;
    cf.lambda.resize(p);
    for (std::size_t j = 0; j < p; ++j) cf.lambda[j] = svd.sigma[j] * svd.sigma[j];

    cf.yty = dot(model.y, model.y);
    cf.c.resize(p);
    cf.rho.resize(p);
    const double y_norm = std::sqrt(cf.yty);
    for (std::size_t j = 0; j < p; ++j) {
        double hy = 0.0;
        for (std::size_t i = 0; i < n; ++i) hy += svd.u(i, j) * model.y[i];
        cf.c[j] = hy / svd.sigma[j];
        cf.rho[j] = hy / y_norm;
    }

    cf.r2 = 0.0;
    for (double r : cf.rho) cf.r2 += r * r;
    cf.rss = cf.yty * (1.0 - cf.r2);
    cf.sigma2_ml = cf.rss / static_cast<double>(n);
    cf.sigma2_unb = n > p + 1 ? cf.rss / static_cast<double>(n - p - 1) : 0.0;

    cf.f_ratios.resize(p);
    const double one_minus_r2 = 1.0 - cf.r2;
    for (std::size_t j = 0; j < p; ++j)
        cf.f_ratios[j] = one_minus_r2 > 0.0
                             ? static_cast<double>(n - p - 1) * cf.rho[j] * cf.rho[j] / one_minus_r2
                             : std::numeric_limits<double>::infinity();

    cf.beta_ols = cf.g * cf.c;
    return cf;
}

BackTransformed back_transform(const StandardizedModel& model, const Vector& beta_std) {
    if (beta_std.size() != model.p)
        throw std::invalid_argument("back_transform: coefficient length mismatch");
    BackTransformed out;
    out.beta.resize(model.p);
    out.intercept = model.y_mean;
    for (std::size_t j = 0; j < model.p; ++j) {
        out.beta[j] = beta_std[j] * model.y_scale / model.x_scales[j];
        out.intercept -= out.beta[j] * model.x_means[j];
    }
    return out;
}

}  // namespace shrinkpath
