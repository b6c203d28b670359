#pragma once

#include <string>
#include <vector>

#include "shrinkpath/linalg.hpp"
#include "shrinkpath/table.hpp"

namespace shrinkpath {

// Centered, unit-variance regression data plus everything needed to map
// results back to original units. Sample variance uses the n-1 divisor.
struct StandardizedModel {
    std::size_t n = 0;
    std::size_t p = 0;
    Vector y;          // length n, mean 0, variance 1
    Matrix x;          // n x p, each column mean 0, variance 1
    double y_mean = 0.0;
    double y_scale = 1.0;
    Vector x_means;
    Vector x_scales;
    std::string y_name;
    std::vector<std::string> x_names;
};

// SVD canonical form X = H diag(sqrt(lambda)) G'. Immutable once built;
// every downstream estimator reads from here.
struct CanonicalForm {
    std::size_t n = 0;
    std::size_t p = 0;
    Vector lambda;     // eigenvalues of X'X, descending, all > 0
    Matrix g;          // p x p orthogonal
    Matrix h;          // n x p, orthonormal columns
    Vector c;          // uncorrelated components, c = diag(lambda)^{-1/2} H'y
    Vector rho;        // principal correlations y'h_j / sqrt(y'y)
    double r2 = 0.0;
    double yty = 0.0;
    double rss = 0.0;
    double sigma2_ml = 0.0;   // RSS / n
    double sigma2_unb = 0.0;  // RSS / (n - p - 1)
    Vector f_ratios;          // (n-p-1) rho_j^2 / (1 - R^2)
    Vector beta_ols;          // G c
};

struct BackTransformed {
    Vector beta;       // original-unit coefficients
    double intercept;
};

/// Center and rescale the named columns to mean 0, variance 1.
StandardizedModel standardize(const Table& table, const std::string& y_name,
                              const std::vector<std::string>& x_names);

// Builds the canonical form via one-sided Jacobi SVD. Sign convention: each
// column of G is flipped so its largest-magnitude entry is positive. Refuses
// X whose smallest singular value is below 1e-9 of the largest.
CanonicalForm canonicalize(const StandardizedModel& model);

/// Map standardized-unit coefficients to original units plus intercept.
BackTransformed back_transform(const StandardizedModel& model, const Vector& beta_std);

}  // namespace shrinkpath
