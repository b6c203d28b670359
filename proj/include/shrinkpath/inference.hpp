#pragma once

#include <array>
#include <string>
#include <vector>

#include "shrinkpath/model.hpp"
#include "shrinkpath/paths.hpp"

namespace shrinkpath {

/// Regularized incomplete beta I_x(a, b) via continued fraction.
double incomplete_beta(double a, double b, double x);

/// CDF of the F distribution with df1, df2 degrees of freedom.
double f_cdf(double x, unsigned df1, unsigned df2);

/// Inverse F CDF, absolute tolerance 1e-10; prob must be inside (0, 1).
double f_quantile(unsigned df1, unsigned df2, double prob);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Unbiased elliptical confidence region for one coefficient pair, with the
// shrinkage trajectory for the same pair overlaid. All coordinates are in
// standardized units.
struct EllipseSpec {
    std::array<std::size_t, 2> pair{};
    std::array<std::string, 2> names{};
    Point2 center;                       // OLS pair estimate
    std::array<std::array<double, 2>, 2> cov2{};  // sigma2_unb [G L^{-1} G']_pair
    std::vector<double> levels;
    std::vector<std::vector<Point2>> boundaries;  // one ring per level
    std::vector<Point2> overlay;         // path trajectory for the pair
    Point2 knot_point;                   // trajectory at m_star
    double m_star = 0.0;
};

// Boundary of { beta_pair : (b - center)' cov2^{-1} (b - center) <= 2 F(2, n-p-1, level) },
// discretized uniformly in the parametric angle of the Cholesky-mapped circle.
EllipseSpec confidence_ellipse(const CanonicalForm& cf, std::size_t i, std::size_t j,
                               const std::vector<double>& levels, const ShrinkagePath& path,
                               const std::string& name_i = "", const std::string& name_j = "",
                               std::size_t boundary_points = 128);

/// Quadratic-form value of a point against the ellipse center/covariance.
double mahalanobis2(const EllipseSpec& spec, Point2 pt);

}  // namespace shrinkpath
