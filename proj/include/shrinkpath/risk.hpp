#pragma once

#include <optional>
#include <string>

#include "shrinkpath/model.hpp"
#include "shrinkpath/paths.hpp"

namespace shrinkpath {

// Plug-in convention for the scaled bias vector b = gamma / sigma used in
// the risk matrices. ml: b_j = sign(c_j) phi_j / sqrt(lambda_j), the pure
// ML plug-in. unbiased: b_j^2 = max(0, c_j^2 / sigma2_unb - 1 / lambda_j).
enum class RiskMode { ml, unbiased };

RiskMode parse_risk_mode(const std::string& s);
std::string to_string(RiskMode mode);

struct RiskEstimates {
    Vector phi2_hat;    // n rho_j^2 / (1 - R^2)
    Vector delta_star;  // phi2 / (phi2 + 1)
    Vector gamma_ml;    // delta_star * c
    Vector bias_vec;    // estimated gamma_j / sigma, mode-dependent
    RiskMode mode = RiskMode::ml;
};

struct ExcessEigen {
    Vector eigenvalues;                       // descending, sigma^2 units
    std::optional<Vector> inferior_direction;  // unit x-space cosines, iff min < 0
};

struct QSearchResult {
    double q_best = 0.0;
    double m_best = 0.0;
    double lr_min = 0.0;
};

/// True when R^2 is so close to 1 that the knot collapses to m = 0.
bool degenerate_fit(const CanonicalForm& cf);

RiskEstimates risk_estimates(const CanonicalForm& cf, RiskMode mode = RiskMode::ml);

// delta*_j = n rho_j^2 / (n rho_j^2 + 1 - R^2), the delta vector most
// likely to carry minimum MSE risk. All-ones in the degenerate R^2 = 1
// limit.
Vector delta_knot(const CanonicalForm& cf);

/// ML estimates of the uncorrelated components, identically delta* * c.
Vector gamma_ml(const CanonicalForm& cf);

/// Diagonal of the relative MSE matrix G M G' with
/// M = diag(delta) Lambda^{-1} diag(delta) + (I-D) b b' (I-D).
Vector relative_mse_diag(const CanonicalForm& cf, const Vector& delta,
                         RiskMode mode = RiskMode::ml);

// Eigen-structure of MSE(ols) - MSE(shrunken) relative to sigma^2. The
// matrix is diagonal-PSD minus rank-one, so at most one eigenvalue can be
// negative; when one is, its G-rotated eigenvector is the inferior
// direction (sign-fixed: largest-magnitude component positive).
ExcessEigen excess_eigen(const CanonicalForm& cf, const Vector& delta,
                         RiskMode mode = RiskMode::ml);

// |Pearson correlation| between the inferior direction at the shrinkage
// terminus m = p and the OLS direction cosines. Throws when no inferior
// direction exists there; returns 1 by convention when p = 1.
double inferior_terminal_alignment(const CanonicalForm& cf, const ShrinkagePath& path,
                                   RiskMode mode = RiskMode::ml);

// -2 log(LR) that the given delta vector has minimum MSE risk, maximized
// over the sigma estimate and component signs. +inf when some delta_j = 1
// with c_j != 0 (the constraint is unattainable there).
double neg2_log_lr(const CanonicalForm& cf, const Vector& delta);

/// RXshrink-style default search mesh: 5, 4.5, ..., -5.
std::vector<double> default_q_mesh();

/// Smallest lattice -2logLR over qm paths for each q in the mesh; ties go
/// to the q nearest zero.
QSearchResult q_search(const CanonicalForm& cf, const std::vector<double>& mesh,
                       unsigned steps = 8);

// Closed-form optimal q-shape for p = 2: the q whose path passes through
// the most-likely minimum-MSE solution, -ln(c_1^2/c_2^2) / ln(lambda_1/lambda_2).
double q_best_p2(const CanonicalForm& cf);

}  // namespace shrinkpath
