#include <cmath>
#include <random>

#include <doctest.h>

#include "ruledkit/antiderivative.hpp"

using ruledkit::Antiderivative;
using ruledkit::ScalarExpr;

TEST_SUITE_BEGIN("antiderivative");

TEST_CASE("matches closed-form antiderivatives") {
    Antiderivative F(ScalarExpr::parse("cos(u)"), 0.0, -10.0, 10.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        double u = pick(rng);
        CHECK(F(u) == doctest::Approx(std::sin(u)).epsilon(1e-10).scale(1));
    }

    Antiderivative G(ScalarExpr::parse("u^2"), 1.0, 0.0, 5.0);
    for (double u : {0.0, 0.3, 1.0, 2.7, 5.0})
        CHECK(G(u) == doctest::Approx((u * u * u - 1.0) / 3.0).epsilon(1e-10).scale(1));
}

TEST_CASE("base point and additivity") {
    Antiderivative F(ScalarExpr::parse("exp(sin(u))"), 0.5, -2.0, 4.0);
    CHECK(F(0.5) == doctest::Approx(0.0).epsilon(1e-14).scale(1));
    // F(b) - F(a) is the integral over [a, b] regardless of the base point
    Antiderivative F2(ScalarExpr::parse("exp(sin(u))"), -1.0, -2.0, 4.0);
    for (double a : {-1.5, 0.0, 2.0})
        for (double b : {-0.5, 1.3, 3.9})
            CHECK(F(b) - F(a) == doctest::Approx(F2(b) - F2(a)).epsilon(1e-11));
}

TEST_CASE("fundamental theorem: numeric derivative returns the integrand") {
    ScalarExpr f = ScalarExpr::parse("cos(3*u)+u/5");
    Antiderivative F(f, 0.0, -3.0, 3.0);
    for (double u : {-2.5, -0.7, 0.1, 1.9, 2.8}) {
        double h = 1e-5;
        double fd = (F(u + h) - F(u - h)) / (2 * h);
        CHECK(fd == doctest::Approx(f.eval(u)).epsilon(1e-9));
    }
}

TEST_CASE("domain is enforced") {
    Antiderivative F(ScalarExpr::parse("u"), 0.0, -1.0, 1.0);
    CHECK_THROWS_AS((void)F(1.5), std::domain_error);
    CHECK_THROWS_AS((void)F(-1.05), std::domain_error);
    // a small extrapolation margin keeps boundary-centered stencils usable
    CHECK_NOTHROW((void)F(-1.001));
    CHECK(F(1.01) == doctest::Approx((1.01 * 1.01) / 2).epsilon(1e-10));
}

TEST_CASE("oscillatory integrand stays within tolerance") {
    Antiderivative F(ScalarExpr::parse("sin(20*u)"), 0.0, 0.0, 6.0);
    for (double u : {0.37, 1.54, 2.9, 5.99})
        CHECK(F(u) == doctest::Approx((1 - std::cos(20 * u)) / 20.0).epsilon(1e-10).scale(1));
}

TEST_SUITE_END();
