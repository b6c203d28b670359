#include <doctest.h>

#include <random>
#include <sstream>

#include "shrinkpath/model.hpp"
#include "shrinkpath/table.hpp"
#include "test_util.hpp"

using namespace shrinkpath;
using test_util::portland;

namespace {

const std::vector<std::string> kAllX = {"p3ca", "p3cs", "p4caf", "p2cs"};

double column_mean(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double column_var(const Vector& v) {
    const double m = column_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("standardize centers and rescales portland") {
    const StandardizedModel m = standardize(portland(), "heat", kAllX);
    CHECK(m.n == 13);
    CHECK(m.p == 4);
    CHECK(std::abs(column_mean(m.y)) <= 1e-12);
    CHECK(std::abs(column_var(m.y) - 1.0) <= 1e-10);
    for (std::size_t j = 0; j < 4; ++j) {
        const Vector col = m.x.column(j);
        CHECK(std::abs(column_mean(col)) <= 1e-12);
        CHECK(std::abs(column_var(col) - 1.0) <= 1e-10);
        CHECK(m.x_scales[j] > 0.0);
    }
    CHECK(m.y_scale > 0.0);
}

TEST_CASE("standardized p4caf has the published marginal correlation") {
    const StandardizedModel m = standardize(portland(), "heat", {"p4caf"});
    // both columns standardized, so corr = x'y / (n-1)
    const double corr = dot(m.y, m.x.column(0)) / 12.0;
    CHECK(corr == doctest::Approx(-0.5347).epsilon(0).scale(1));
    CHECK(std::abs(corr - (-0.5347)) <= 5e-4);
}

TEST_CASE("standardize rejects bad input") {
    Table t = portland();
    CHECK_THROWS_AS((void)standardize(t, "nope", kAllX), std::invalid_argument);
    CHECK_THROWS_AS((void)standardize(t, "heat", {"p3ca", "nope"}), std::invalid_argument);

    Table constant = portland();
    for (double& v : constant.columns[2]) v = 7.0;
    CHECK_THROWS_WITH_AS((void)standardize(constant, "heat", kAllX),
                         doctest::Contains("zero-variance column"), std::invalid_argument);

    // n <= p
    Table small;
    small.column_names = {"y", "a", "b", "c", "d", "e"};
    small.columns.assign(6, Vector{1.0, 2.0, 3.1, 4.7, 5.2});
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 5; ++i) small.columns[j][i] += 0.1 * (j + 1) * i;
    CHECK_THROWS_WITH_AS((void)standardize(small, "y", {"a", "b", "c", "d", "e"}),
                         doctest::Contains("fat data"), std::invalid_argument);

    // too few rows
    Table tiny;
    tiny.column_names = {"y", "a"};
    tiny.columns = {{1, 2, 3, 4}, {4, 3, 2, 1}};
    CHECK_THROWS_AS((void)standardize(tiny, "y", {"a"}), std::invalid_argument);
}

TEST_CASE("csv reader rejects non-numeric cells and ragged rows") {
    std::istringstream ok("a,b\n1,2\n3,4\n");
    const Table t = read_csv(ok);
    CHECK(t.row_count() == 2);
    CHECK(t.column("b")[1] == 4.0);

    std::istringstream bad("a,b\n1,zap\n");
    CHECK_THROWS_WITH_AS((void)read_csv(bad), doctest::Contains("non-numeric"),
                         std::invalid_argument);
    std::istringstream ragged("a,b\n1,2,3\n");
    CHECK_THROWS_AS((void)read_csv(ragged), std::invalid_argument);
}

TEST_CASE("canonicalize identity case: orthonormal columns") {
    StandardizedModel m;
    m.n = 6;
    m.p = 3;
    m.x = Matrix(6, 3);
    m.x(0, 0) = 1.0;
    m.x(1, 1) = 1.0;
    m.x(2, 2) = 1.0;
    m.y = {0.5, -0.25, 0.25, -0.5, 0.0, 0.0};
    m.x_means = {0, 0, 0};
    m.x_scales = {1, 1, 1};
    m.x_names = {"a", "b", "c"};

    const CanonicalForm cf = canonicalize(m);
    for (double l : cf.lambda) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(cf.g(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1).epsilon(1e-10));
}

TEST_CASE("portland R^2 matches the brute-force OLS oracle") {
    const StandardizedModel m = standardize(portland(), "heat", kAllX);
    const CanonicalForm cf = canonicalize(m);

    const Vector beta_oracle = test_util::ols_normal_equations(m.x, m.y);
    const double r2_oracle = test_util::r2_of_fit(m.x, m.y, beta_oracle);

    CHECK(std::abs(cf.r2 - r2_oracle) <= 1e-10);
    CHECK(std::abs(cf.r2 - 0.9824) <= 5e-4);
    // Fig. 6 cross-check: the LR terminus equals -n ln(1 - R^2) = 52.5
    CHECK(-13.0 * std::log(1.0 - cf.r2) == doctest::Approx(52.5).epsilon(0.002));

    for (std::size_t j = 0; j < 4; ++j)
        CHECK(cf.beta_ols[j] == doctest::Approx(beta_oracle[j]).epsilon(1e-9));
}

TEST_CASE("canonical form invariants hold on random instances") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<std::size_t> n_dist(6, 50);
    std::uniform_int_distribution<std::size_t> p_dist(1, 8);

    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = n_dist(rng);
        const std::size_t p = std::min(p_dist(rng), n - 2);
        const StandardizedModel m = test_util::random_model(rng, n, p);
        const CanonicalForm cf = canonicalize(m);

        // reconstruction: X = H sqrt(Lambda) G'
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                double v = 0.0;
                for (std::size_t k = 0; k < p; ++k)
                    v += cf.h(i, k) * std::sqrt(cf.lambda[k]) * cf.g(j, k);
                worst = std::max(worst, std::abs(v - m.x(i, j)));
            }
        CHECK(worst <= 1e-10 * m.x.max_abs());

        // orthogonality
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < p; ++b) {
                double gg = 0.0, hh = 0.0;
                for (std::size_t k = 0; k < p; ++k) gg += cf.g(k, a) * cf.g(k, b);
                for (std::size_t k = 0; k < n; ++k) hh += cf.h(k, a) * cf.h(k, b);
                const double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(gg - want) <= 1e-10);
                CHECK(std::abs(hh - want) <= 1e-10);
            }

        // c_j = rho_j sqrt(y'y / lambda_j); R^2 = sum rho^2 in [0,1]
        double r2 = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            CHECK(cf.c[j] ==
                  doctest::Approx(cf.rho[j] * std::sqrt(cf.yty / cf.lambda[j])).epsilon(1e-12));
            r2 += cf.rho[j] * cf.rho[j];
        }
        CHECK(cf.r2 == doctest::Approx(r2).epsilon(1e-12));
        CHECK(cf.r2 >= 0.0);
        CHECK(cf.r2 <= 1.0 + 1e-12);

        // trace identity for standardized X
        double trace = 0.0;
        for (double l : cf.lambda) trace += l;
        CHECK(trace == doctest::Approx(static_cast<double>((n - 1) * p)).epsilon(1e-8));

        // fitted values both ways; residual orthogonality
        const Vector xb = m.x * cf.beta_ols;
        Vector hhy(n, 0.0);
        for (std::size_t k = 0; k < p; ++k) {
            double hy = 0.0;
            for (std::size_t i = 0; i < n; ++i) hy += cf.h(i, k) * m.y[i];
            for (std::size_t i = 0; i < n; ++i) hhy[i] += cf.h(i, k) * hy;
        }
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(xb[i] - hhy[i]) <= 1e-10);
        for (std::size_t j = 0; j < p; ++j) {
            double resid_proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) resid_proj += m.x(i, j) * (m.y[i] - xb[i]);
            CHECK(std::abs(resid_proj) <= 1e-9);
        }
    }
}

TEST_CASE("canonicalize refuses rank-deficient X") {
    Table t = portland();
    t.column_names.push_back("dup");
    t.columns.push_back(t.columns[1]);  // exact copy of p3ca
    const StandardizedModel m =
        standardize(t, "heat", {"p3ca", "p3cs", "p4caf", "p2cs", "dup"});
    CHECK_THROWS_WITH_AS((void)canonicalize(m), doctest::Contains("rank-deficient"),
                         std::invalid_argument);
}

TEST_CASE("back_transform zero and round-trip") {
    const StandardizedModel m = standardize(portland(), "heat", kAllX);
    const BackTransformed zero = back_transform(m, Vector(4, 0.0));
    for (double b : zero.beta) CHECK(b == 0.0);
    CHECK(zero.intercept == doctest::Approx(m.y_mean).epsilon(1e-14));

    // standardized and original-unit fits agree
    std::mt19937 rng(55);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Table t = portland();
    for (int rep = 0; rep < 10; ++rep) {
        Vector beta_std(4);
        for (double& b : beta_std) b = gauss(rng);
        const BackTransformed bt = back_transform(m, beta_std);
        for (std::size_t i = 0; i < m.n; ++i) {
            double fit_std = 0.0;
            for (std::size_t j = 0; j < 4; ++j) fit_std += m.x(i, j) * beta_std[j];
            const double fit_orig_units = m.y_mean + m.y_scale * fit_std;
            double fit_bt = bt.intercept;
            for (std::size_t j = 0; j < 4; ++j)
                fit_bt += bt.beta[j] * t.columns[j + 1][i];
            CHECK(std::abs(fit_bt - fit_orig_units) <= 1e-10 * std::abs(fit_orig_units));
        }
    }
}

TEST_CASE("yonx OLS slope in original units") {
    const StandardizedModel m = standardize(portland(), "heat", {"p4caf"});
    const CanonicalForm cf = canonicalize(m);
    const BackTransformed bt = back_transform(m, cf.beta_ols);
    CHECK(std::abs(bt.beta[0] - (-1.256)) <= 0.01);
}
