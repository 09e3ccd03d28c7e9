#include <cmath>
#include <random>

#include <doctest.h>

#include "ruledkit/expr.hpp"

using ruledkit::ScalarExpr;

TEST_SUITE_BEGIN("expr");

TEST_CASE("parse and evaluate basic grammar") {
    CHECK(ScalarExpr::parse("1").eval(5.0) == doctest::Approx(1.0));
    CHECK(ScalarExpr::parse("u").eval(2.5) == doctest::Approx(2.5));
    CHECK(ScalarExpr::parse("2+3*4").eval(0) == doctest::Approx(14.0));
    CHECK(ScalarExpr::parse("(2+3)*4").eval(0) == doctest::Approx(20.0));
    CHECK(ScalarExpr::parse("2^3").eval(0) == doctest::Approx(8.0));
    CHECK(ScalarExpr::parse("u^2").eval(3) == doctest::Approx(9.0));
    CHECK(ScalarExpr::parse("-u").eval(2) == doctest::Approx(-2.0));
    CHECK(ScalarExpr::parse("pi").eval(0) == doctest::Approx(M_PI));
    CHECK(ScalarExpr::parse("sin(u)").eval(1.0) == doctest::Approx(std::sin(1.0)));
    CHECK(ScalarExpr::parse("cos(u)*exp(u/2)").eval(0.7) ==
          doctest::Approx(std::cos(0.7) * std::exp(0.35)));
    CHECK(ScalarExpr::parse("2+sin(u)").eval(0.3) == doctest::Approx(2 + std::sin(0.3)));
    CHECK(ScalarExpr::parse("1 - 2 - 3").eval(0) == doctest::Approx(-4.0));
    CHECK(ScalarExpr::parse("8/4/2").eval(0) == doctest::Approx(1.0));
}

TEST_CASE("custom variable name") {
    CHECK(ScalarExpr::parse("cos(V)", "V").eval(0.4) == doctest::Approx(std::cos(0.4)));
    CHECK(ScalarExpr::parse("exp(V/2)", "V").eval(1.2) == doctest::Approx(std::exp(0.6)));
    CHECK_THROWS_AS((void)ScalarExpr::parse("u", "V"), ruledkit::ExprParseError);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS((void)ScalarExpr::parse(""), ruledkit::ExprParseError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("2+"), ruledkit::ExprParseError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("sin(u"), ruledkit::ExprParseError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("u^u"), ruledkit::ExprParseError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("u^1.5"), ruledkit::ExprParseError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("bogus(u)"), ruledkit::ExprParseError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("2 3"), ruledkit::ExprParseError);
}

TEST_CASE("eval errors on non-finite results") {
    CHECK_THROWS_AS((void)ScalarExpr::parse("1/u").eval(0.0), ruledkit::ExprEvalError);
    CHECK_THROWS_AS((void)ScalarExpr::parse("exp(u)").eval(1e6), ruledkit::ExprEvalError);
}

TEST_CASE("derivative matches central differences at 1000 random points") {
    const char* exprs[] = {
        "2+sin(u)", "cos(u)*u", "exp(u/2)", "u^3 - 2*u + 1",
        "sin(u)*cos(2*u)", "1/(2+sin(u))", "exp(sin(u))", "u/5",
    };
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> pick(-3.0, 3.0);
    for (const char* src : exprs) {
        ScalarExpr f = ScalarExpr::parse(src);
        ScalarExpr fp = f.derivative();
        for (int i = 0; i < 125; ++i) {
            double u = pick(rng);
            double h = 1e-5 * (1 + std::abs(u));
            double fd = (f.eval(u + h) - f.eval(u - h)) / (2 * h);
            CHECK(fp.eval(u) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("second derivatives are exact too") {
    ScalarExpr f = ScalarExpr::parse("exp(sin(u))*cos(u)");
    ScalarExpr f2 = f.derivative().derivative();
    for (double u : {0.1, 0.9, -1.7, 2.3}) {
        double h = 1e-4;
        double fd = (f.eval(u + h) - 2 * f.eval(u) + f.eval(u - h)) / (h * h);
        CHECK(f2.eval(u) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("is_constant and constant folding") {
    double c = 0;
    CHECK(ScalarExpr::parse("2*3+1").is_constant(&c));
    CHECK(c == doctest::Approx(7.0));
    CHECK_FALSE(ScalarExpr::parse("u+1").is_constant());
    CHECK(ScalarExpr::parse("0*u").is_constant(&c));
    CHECK(c == doctest::Approx(0.0));
    // derivative of a constant expression is the zero constant
    CHECK(ScalarExpr::parse("pi*2").derivative().is_constant(&c));
    CHECK(c == doctest::Approx(0.0));
}

TEST_CASE("to_string round-trips through the parser") {
    for (const char* src : {"2+sin(u)", "cos(u)*u", "u^3 - 2*u + 1", "-u/5"}) {
        ScalarExpr f = ScalarExpr::parse(src);
        ScalarExpr g = ScalarExpr::parse(f.to_string());
        for (double u : {-2.0, -0.3, 0.8, 2.9})
            CHECK(g.eval(u) == doctest::Approx(f.eval(u)).epsilon(1e-14));
    }
}

TEST_SUITE_END();
