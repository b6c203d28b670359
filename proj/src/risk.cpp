#include "shrinkpath/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shrinkpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateR2 = 1e-10;  // 1 - R^2 below this counts as an exact fit

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

void check_delta(const CanonicalForm& cf, const Vector& delta) {
    if (delta.size() != cf.p) throw std::invalid_argument("delta length mismatch");
    for (double d : delta)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("delta component outside [0,1]");
}

// Relative risk matrix M = D Lambda^{-1} D + (I-D) b b' (I-D) in gamma
// coordinates. Unbiased mode floors the diagonal at the relative variance
// delta_j^2 / lambda_j.
Matrix gamma_risk_matrix(const CanonicalForm& cf, const Vector& delta, const Vector& b,
                         RiskMode mode) {
    Matrix m(cf.p, cf.p);
    for (std::size_t i = 0; i < cf.p; ++i) {
        for (std::size_t j = 0; j < cf.p; ++j)
            m(i, j) = (1.0 - delta[i]) * b[i] * (1.0 - delta[j]) * b[j];
        m(i, i) += delta[i] * delta[i] / cf.lambda[i];
        if (mode == RiskMode::unbiased)
            m(i, i) = std::max(m(i, i), delta[i] * delta[i] / cf.lambda[i]);
    }
    return m;
}

}  // namespace

RiskMode parse_risk_mode(const std::string& s) {
    if (s == "ml") return RiskMode::ml;
    if (s == "unbiased") return RiskMode::unbiased;
    throw std::invalid_argument("unknown risk mode: '" + s + "' (expected ml|unbiased)");
}

std::string to_string(RiskMode mode) { return mode == RiskMode::ml ? "ml" : "unbiased"; }

bool degenerate_fit(const CanonicalForm& cf) { return 1.0 - cf.r2 <= kDegenerateR2; }

Vector delta_knot(const CanonicalForm& cf) {
    Vector d(cf.p);
    if (degenerate_fit(cf)) {
        std::fill(d.begin(), d.end(), 1.0);
        return d;
    }
    const double omr2 = 1.0 - cf.r2;
    for (std::size_t j = 0; j < cf.p; ++j) {
        const double nr2 = cf.n * cf.rho[j] * cf.rho[j];
        d[j] = nr2 / (nr2 + omr2);
    }
    return d;
}

Vector gamma_ml(const CanonicalForm& cf) {
    Vector d = delta_knot(cf);
    for (std::size_t j = 0; j < cf.p; ++j) d[j] *= cf.c[j];
    return d;
}

RiskEstimates risk_estimates(const CanonicalForm& cf, RiskMode mode) {
    RiskEstimates est;
    est.mode = mode;
    est.delta_star = delta_knot(cf);
    est.gamma_ml = gamma_ml(cf);

    const double omr2 = std::max(1.0 - cf.r2, kDegenerateR2);
    est.phi2_hat.resize(cf.p);
    est.bias_vec.resize(cf.p);
    for (std::size_t j = 0; j < cf.p; ++j) {
        est.phi2_hat[j] = cf.n * cf.rho[j] * cf.rho[j] / omr2;
        if (mode == RiskMode::ml) {
            est.bias_vec[j] = sgn(cf.c[j]) * std::sqrt(est.phi2_hat[j] / cf.lambda[j]);
        } else {
            const double b2 = cf.sigma2_unb > 0.0
                                  ? cf.c[j] * cf.c[j] / cf.sigma2_unb - 1.0 / cf.lambda[j]
                                  : 0.0;
            est.bias_vec[j] = sgn(cf.c[j]) * std::sqrt(std::max(0.0, b2));
        }
    }
    return est;
}

Vector relative_mse_diag(const CanonicalForm& cf, const Vector& delta, RiskMode mode) {
    check_delta(cf, delta);
    const RiskEstimates est = risk_estimates(cf, mode);
    const Matrix m = gamma_risk_matrix(cf, delta, est.bias_vec, mode);
    const Matrix gm = cf.g * m;
    Vector out(cf.p, 0.0);
    for (std::size_t i = 0; i < cf.p; ++i)
        for (std::size_t k = 0; k < cf.p; ++k) out[i] += gm(i, k) * cf.g(i, k);
    return out;
}

ExcessEigen excess_eigen(const CanonicalForm& cf, const Vector& delta, RiskMode mode) {
    check_delta(cf, delta);
    const RiskEstimates est = risk_estimates(cf, mode);

    // E = (Lambda^{-1} - D Lambda^{-1} D) - (I-D) b b' (I-D)
    Matrix e(cf.p, cf.p);
    for (std::size_t i = 0; i < cf.p; ++i) {
        const double wi = (1.0 - delta[i]) * est.bias_vec[i];
        for (std::size_t j = 0; j < cf.p; ++j)
            e(i, j) = -wi * (1.0 - delta[j]) * est.bias_vec[j];
        e(i, i) += (1.0 - delta[i] * delta[i]) / cf.lambda[i];
    }

    SymEigenResult eig = jacobi_eigen_sym(e);

    ExcessEigen out;
    out.eigenvalues = eig.values;
    if (eig.values.back() < 0.0) {
        Vector dir = cf.g * eig.vectors.column(cf.p - 1);
        const double nrm = norm2(dir);
        std::size_t k = 0;
        for (std::size_t r = 1; r < cf.p; ++r)
            if (std::abs(dir[r]) > std::abs(dir[k])) k = r;
        const double flip = dir[k] < 0.0 ? -1.0 : 1.0;
        for (double& v : dir) v *= flip / nrm;
        out.inferior_direction = std::move(dir);
    }
    return out;
}

double inferior_terminal_alignment(const CanonicalForm& cf, const ShrinkagePath& path,
                                   RiskMode mode) {
    if (path.p != cf.p) throw std::invalid_argument("path/canonical-form mismatch");
    if (cf.p == 1) return 1.0;  // the single direction is just "up and down"

    const ExcessEigen terminal = excess_eigen(cf, Vector(cf.p, 0.0), mode);
    if (!terminal.inferior_direction)
        throw std::runtime_error("no inferior direction at the shrinkage terminus");

    Vector cosines = cf.beta_ols;
    const double nrm = norm2(cosines);
    if (nrm == 0.0) throw std::runtime_error("OLS solution is zero; no direction to compare");
    for (double& v : cosines) v /= nrm;
    return std::abs(pearson(*terminal.inferior_direction, cosines));
}

double neg2_log_lr(const CanonicalForm& cf, const Vector& delta) {
    check_delta(cf, delta);
    if (cf.sigma2_ml <= 0.0 || degenerate_fit(cf)) return kInf;

    // constrained gamma_j = +-sigma sqrt(delta_j / (lambda_j (1-delta_j)));
    // sign-optimal choice is sign(c_j), leaving u_j = sqrt(lambda_j)|c_j|,
    // v_j = sqrt(delta_j/(1-delta_j)) and a quadratic in sigma.
    double s_uv = 0.0, b_vv = 0.0;
    std::vector<std::pair<double, double>> uv;
    uv.reserve(cf.p);
    for (std::size_t j = 0; j < cf.p; ++j) {
        const double u = std::sqrt(cf.lambda[j]) * std::abs(cf.c[j]);
        if (delta[j] >= 1.0) {
            if (u > 0.0) return kInf;  // exact-unity shrinkage factor is unattainable
            continue;                  // c_j = 0: constraint already satisfied by gamma_j = 0
        }
        const double v = std::sqrt(delta[j] / (1.0 - delta[j]));
        uv.emplace_back(u, v);
        s_uv += u * v;
        b_vv += v * v;
    }

    const double n = static_cast<double>(cf.n);
    const double sigma =
        (-s_uv + std::sqrt(s_uv * s_uv + 4.0 * n * cf.yty)) / (2.0 * n);
    const double sigma2 = sigma * sigma;

    double quad = cf.rss;
    for (const auto& [u, v] : uv) {
        const double r = u - sigma * v;
        quad += r * r;
    }
    return n * std::log(sigma2 / cf.sigma2_ml) + quad / sigma2 - n;
}

std::vector<double> default_q_mesh() {
    std::vector<double> mesh;
    for (int i = 0; i <= 20; ++i) mesh.push_back(5.0 - 0.5 * i);
    return mesh;
}

QSearchResult q_search(const CanonicalForm& cf, const std::vector<double>& mesh,
                       unsigned steps) {
    if (mesh.empty()) throw std::invalid_argument("q_search: empty mesh");

    QSearchResult best;
    bool have = false;
    for (double q : mesh) {
        const ShrinkagePath path = build_qm_path(cf, q, steps);
        double lr_min = kInf;
        double m_at = path.lattice.back();
        for (std::size_t i = 0; i < path.size(); ++i) {
            const double lr = neg2_log_lr(cf, path.deltas[i]);
            if (lr < lr_min) {
                lr_min = lr;
                m_at = path.lattice[i];
            }
        }
        const bool better =
            !have || lr_min < best.lr_min - 1e-12 ||
            (std::abs(lr_min - best.lr_min) <= 1e-12 && std::abs(q) < std::abs(best.q_best));
        if (better) {
            best = {q, m_at, lr_min};
            have = true;
        }
    }
    return best;
}

double q_best_p2(const CanonicalForm& cf) {
    if (cf.p != 2) throw std::invalid_argument("q_best_p2 requires p = 2");
    if (cf.lambda[0] == cf.lambda[1])
        throw std::invalid_argument("q_best_p2 undefined for equal eigenvalues");
    if (cf.c[0] == 0.0 || cf.c[1] == 0.0)
        throw std::invalid_argument("q_best_p2 undefined for a zero component");
    return -std::log((cf.c[0] * cf.c[0]) / (cf.c[1] * cf.c[1])) /
           std::log(cf.lambda[0] / cf.lambda[1]);
}

}  // namespace shrinkpath
