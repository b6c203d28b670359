#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shrinkpath/model.hpp"

namespace shrinkpath {

enum class PathKind { efficient, qm, yonx };

std::string to_string(PathKind kind);

/// Original-unit fitted line for the p = 1 display plot.
struct FittedLine {
    double m = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
};

// A shrinkage path realized on a lattice of m-extents. The lattice runs
// 0, 1/steps, ..., p and, for the efficient and yonx kinds, additionally
// contains the exact knot even when it is off-lattice.
struct ShrinkagePath {
    PathKind kind = PathKind::efficient;
    std::size_t p = 0;
    unsigned steps = 8;
    Vector lattice;                    // ascending m values
    std::vector<Vector> deltas;        // per lattice point, each length p in [0,1]
    double m_star = 0.0;               // knot extent (efficient/yonx) or argmin -2logLR (qm)
    Vector delta_star;                 // delta vector at m_star
    std::optional<double> q;           // qm only
    Vector k_values;                   // qm only: per-point k, +inf at m = p
    bool degenerate_knot = false;      // knot collapsed to an endpoint (R^2 = 1 or R^2 = 0)
    std::vector<FittedLine> display_lines;  // yonx only: m in {0, m*, 2m*}

    std::size_t size() const { return lattice.size(); }
};

/// Multicollinearity allowance m = p - sum(delta); requires delta in [0,1]^p.
double mcal(const Vector& delta);

/// Shrunken coefficients beta = G diag(delta) c in standardized units.
Vector coef_at_delta(const CanonicalForm& cf, const Vector& delta);

/// q-shape family delta_j = 1 / (1 + k lambda_j^{q-1}); k >= 0.
Vector qm_delta(const CanonicalForm& cf, double q, double k);

// Solves mcal(qm_delta(cf, q, k)) = m_target for k by bisection, exploiting
// strict monotonicity of m in k. m_target = p reports +inf (delta set to
// exact zeros by the caller rather than through a huge finite k).
double solve_k_for_m(const CanonicalForm& cf, double q, double m_target);

// Two-piece linear spline through the knot delta* = delta_knot(cf):
// straight from all-ones to delta* on [0, m*], then from delta* to zero.
ShrinkagePath build_efficient_path(const CanonicalForm& cf, unsigned steps = 8);

/// q-shape path over the same lattice; m_star is the lattice minimum of
/// the -2 log likelihood-ratio statistic.
ShrinkagePath build_qm_path(const CanonicalForm& cf, double q, unsigned steps = 8);

/// p = 1 specialization with the three display slopes in original units.
ShrinkagePath build_yonx_path(const StandardizedModel& model, unsigned steps = 8);

}  // namespace shrinkpath
