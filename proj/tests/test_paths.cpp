#include <doctest.h>

#include <cmath>

#include "shrinkpath/paths.hpp"
#include "shrinkpath/risk.hpp"
#include "test_util.hpp"

using namespace shrinkpath;
using test_util::portland;

namespace {

const std::vector<std::string> kAllX = {"p3ca", "p3cs", "p4caf", "p2cs"};

CanonicalForm portland_cf() {
    return canonicalize(standardize(portland(), "heat", kAllX));
}

}  // namespace

TEST_CASE("mcal endpoints and the published knot extent") {
    CHECK(mcal({1, 1, 1, 1}) == 0.0);
    CHECK(mcal({0, 0, 0, 0}) == 4.0);
    CHECK(std::abs(mcal({0.9986, 0.0743, 0.9266, 0.1528}) - 1.848) <= 0.005);
    CHECK_THROWS_AS((void)mcal({0.5, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS((void)mcal({-0.1}), std::invalid_argument);
}

TEST_CASE("efficient path hits the knot and stays piecewise linear") {
    const CanonicalForm cf = portland_cf();
    const ShrinkagePath path = build_efficient_path(cf, 8);
    CHECK(path.kind == PathKind::efficient);
    CHECK_FALSE(path.degenerate_knot);

    // knot is on the lattice even though it is not a multiple of 1/8
    bool found = false;
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path.lattice[i] == path.m_star) {
            found = true;
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(path.deltas[i][j] == path.delta_star[j]);
        }
    CHECK(found);
    CHECK(path.size() == 4 * 8 + 2);

    // endpoints
    for (double d : path.deltas.front()) CHECK(d == 1.0);
    for (double d : path.deltas.back()) CHECK(d == 0.0);

    // second piece is linear in m: lattice values are exact multiples of
    // delta*, so the (m*+p)/2 point would carry delta*/2 exactly
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double m = path.lattice[i];
        if (m < path.m_star) continue;
        const double f = (4.0 - m) / (4.0 - path.m_star);
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(path.deltas[i][j] - f * path.delta_star[j]) <= 1e-15);
    }

    // m-identity and monotonicity across the lattice
    for (std::size_t i = 0; i < path.size(); ++i) {
        CHECK(std::abs(mcal(path.deltas[i]) - path.lattice[i]) <= 1e-9);
        if (i > 0)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(path.deltas[i][j] <= path.deltas[i - 1][j] + 1e-12);
    }
}

TEST_CASE("portland delta ordering persists along the path") {
    const CanonicalForm cf = portland_cf();
    const ShrinkagePath path = build_efficient_path(cf, 20);
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double m = path.lattice[i];
        if (m <= 0.0 || m >= 4.0) continue;
        const Vector& d = path.deltas[i];
        CHECK(d[1] <= d[3] + 1e-12);  // delta_2 smallest
        CHECK(d[3] <= d[2] + 1e-12);
        CHECK(d[3] <= d[0] + 1e-12);
    }
}

TEST_CASE("coefficients are exactly proportional beyond the knot") {
    const CanonicalForm cf = portland_cf();
    const ShrinkagePath path = build_efficient_path(cf, 20);
    const Vector beta_knot = coef_at_delta(cf, path.delta_star);
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double m = path.lattice[i];
        if (m < path.m_star) continue;
        const double f = (4.0 - m) / (4.0 - path.m_star);
        const Vector beta = coef_at_delta(cf, path.deltas[i]);
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(beta[j] - f * beta_knot[j]) <= 1e-12);
    }
}

TEST_CASE("coef_at_delta endpoints") {
    const CanonicalForm cf = portland_cf();
    const Vector at_ols = coef_at_delta(cf, Vector(4, 1.0));
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(at_ols[j] == doctest::Approx(cf.beta_ols[j]).epsilon(1e-14));
    for (double b : coef_at_delta(cf, Vector(4, 0.0))) CHECK(b == 0.0);
}

TEST_CASE("p4caf coefficient flips sign past m = 0.75") {
    const CanonicalForm cf = portland_cf();
    const ShrinkagePath path = build_efficient_path(cf, 20);
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Vector beta = coef_at_delta(cf, path.deltas[i]);
        if (path.lattice[i] == 0.0) CHECK(beta[2] > 0.0);
        if (path.lattice[i] > 0.75 && path.lattice[i] < 4.0) CHECK(beta[2] < 0.0);
    }
}

TEST_CASE("qm delta forms") {
    const CanonicalForm cf = portland_cf();

    for (double q : {-5.0, 0.0, 1.0, 2.5}) {
        const Vector ones = qm_delta(cf, q, 0.0);
        for (double d : ones) CHECK(d == 1.0);
    }
    // q = 1: uniform shrinkage 1/(1+k)
    const Vector uniform = qm_delta(cf, 1.0, 3.0);
    for (double d : uniform) CHECK(d == doctest::Approx(0.25).epsilon(1e-14));

    // q = 0 is the classical lambda/(lambda+k) form
    const Vector hk = qm_delta(cf, 0.0, 2.0);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(hk[j] == doctest::Approx(cf.lambda[j] / (cf.lambda[j] + 2.0)).epsilon(1e-14));

    CHECK_THROWS_AS((void)qm_delta(cf, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("solve_k_for_m round-trips across the lattice") {
    // p = 2 bundled-data case plus the full model, several shapes
    const CanonicalForm cf2 =
        canonicalize(standardize(portland(), "heat", {"p3cs", "p2cs"}));
    const CanonicalForm cf4 = portland_cf();

    for (const CanonicalForm* cf : {&cf2, &cf4}) {
        const double p = static_cast<double>(cf->p);
        for (double q : {-5.0, -0.6953, 0.0, 2.0}) {
            for (int i = 0; i <= 16; ++i) {
                const double m = p * i / 16.0;
                if (m >= p) continue;
                const double k = solve_k_for_m(*cf, q, m);
                CHECK(std::abs(mcal(qm_delta(*cf, q, k)) - m) <= 1e-10);
            }
        }
    }
    CHECK(solve_k_for_m(cf4, 0.0, 0.0) == 0.0);
    CHECK(std::isinf(solve_k_for_m(cf4, 0.0, 4.0)));
}

TEST_CASE("qm path lattice, terminus and monotonicity") {
    const CanonicalForm cf = portland_cf();
    const ShrinkagePath path = build_qm_path(cf, -5.0, 8);
    CHECK(path.size() == 4 * 8 + 1);  // no off-lattice knot for qm
    CHECK(path.q.has_value());
    CHECK(path.k_values.size() == path.size());
    CHECK(path.k_values.front() == 0.0);
    CHECK(std::isinf(path.k_values.back()));
    for (double d : path.deltas.back()) CHECK(d == 0.0);

    for (std::size_t i = 1; i < path.size(); ++i) {
        CHECK(std::abs(mcal(path.deltas[i]) - path.lattice[i]) <= 1e-9);
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(path.deltas[i][j] <= path.deltas[i - 1][j] + 1e-12);
    }
}

TEST_CASE("yonx path: knot, slopes and centroid lines") {
    const StandardizedModel m = standardize(portland(), "heat", {"p4caf"});
    const ShrinkagePath path = build_yonx_path(m, 8);
    CHECK(path.kind == PathKind::yonx);
    CHECK(std::abs(path.m_star - 0.161) <= 0.001);

    // delta(m) = 1 - m exactly on the whole lattice
    for (std::size_t i = 0; i < path.size(); ++i)
        CHECK(path.deltas[i][0] == doctest::Approx(1.0 - path.lattice[i]).epsilon(1e-15));

    REQUIRE(path.display_lines.size() == 3);
    CHECK(std::abs(path.display_lines[0].slope - (-1.256)) <= 0.01);
    CHECK(path.display_lines[1].m == doctest::Approx(path.m_star));
    CHECK(path.display_lines[2].m == doctest::Approx(2.0 * path.m_star));

    // every fitted line passes through the data centroid
    const double x_bar = m.x_means[0], y_bar = m.y_mean;
    for (const FittedLine& ln : path.display_lines)
        CHECK(std::abs(ln.intercept + ln.slope * x_bar - y_bar) <= 1e-10);

    // shrinkage flattens: |OLS| > |minMSE| > |double-shrunk|
    CHECK(std::abs(path.display_lines[0].slope) > std::abs(path.display_lines[1].slope));
    CHECK(std::abs(path.display_lines[1].slope) > std::abs(path.display_lines[2].slope));

    const StandardizedModel wide = standardize(portland(), "heat", {"p3ca", "p3cs"});
    CHECK_THROWS_AS((void)build_yonx_path(wide, 8), std::invalid_argument);
}

TEST_CASE("exact fit degenerates the knot but not the path") {
    // y is an exact linear function of two predictors
    Table t;
    t.column_names = {"y", "a", "b"};
    t.columns.assign(3, Vector(10));
    for (std::size_t i = 0; i < 10; ++i) {
        const double a = static_cast<double>(i) + 0.25 * ((i * 7) % 3);
        const double b = 2.0 * ((i * 5) % 7) - a;
        t.columns[1][i] = a;
        t.columns[2][i] = b;
        t.columns[0][i] = 3.0 * a - 1.5 * b + 4.0;
    }
    const StandardizedModel m = standardize(t, "y", {"a", "b"});
    const CanonicalForm cf = canonicalize(m);
    CHECK(1.0 - cf.r2 <= 1e-12);

    const ShrinkagePath path = build_efficient_path(cf, 8);
    CHECK(path.degenerate_knot);
    CHECK(path.m_star == doctest::Approx(0.0));
    CHECK(path.size() == 2 * 8 + 1);
    // single linear piece from all-ones to zero
    for (std::size_t i = 0; i < path.size(); ++i)
        for (double d : path.deltas[i])
            CHECK(d == doctest::Approx(1.0 - path.lattice[i] / 2.0).epsilon(1e-12));
}

TEST_CASE("m-identity holds for every kind on random data") {
    std::mt19937 rng(2025);
    for (int rep = 0; rep < 5; ++rep) {
        const StandardizedModel m = test_util::random_model(rng, 20, 4);
        const CanonicalForm cf = canonicalize(m);
        for (const ShrinkagePath& path :
             {build_efficient_path(cf, 8), build_qm_path(cf, -2.0, 8)}) {
            for (std::size_t i = 0; i < path.size(); ++i)
                CHECK(std::abs(mcal(path.deltas[i]) - path.lattice[i]) <= 1e-9);
        }
        const StandardizedModel m1 = test_util::random_model(rng, 15, 1);
        const ShrinkagePath yon = build_yonx_path(m1, 8);
        for (std::size_t i = 0; i < yon.size(); ++i)
            CHECK(std::abs(mcal(yon.deltas[i]) - yon.lattice[i]) <= 1e-9);
    }
}
