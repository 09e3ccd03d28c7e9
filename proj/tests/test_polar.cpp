#include <cmath>
#include <random>

#include <doctest.h>

#include "ruledkit/oracle.hpp"
#include "ruledkit/polar.hpp"

using namespace ruledkit;

namespace {

RuledSurfaceSpec fix_c(double hi = 6.5) {
    return {ScalarExpr::constant(1), ScalarExpr::constant(1), ScalarExpr::constant(0), 0.0, hi};
}

RuledSurfaceSpec fix_g() {
    return {ScalarExpr::parse("2+sin(u)"), ScalarExpr::parse("cos(u)"),
            ScalarExpr::parse("u/5"), 0.0, 6.5};
}

} // namespace

TEST_SUITE_BEGIN("polar");

TEST_CASE("V and its partials") {
    RuledSurfaceSpec spec = fix_g();
    PolarSupport ps(spec, ScalarExpr::parse("2+sin(V)", "V"));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    for (int i = 0; i < 40; ++i) {
        double u = pu(rng), v = pv(rng);
        double d = spec.delta(u);
        CHECK(ps.V(u, v) ==
              doctest::Approx(std::atan(v / d) - spec.kappa_integral()(u)).epsilon(1e-12));
        double h = 1e-6;
        CHECK(ps.V1(u, v) ==
              doctest::Approx((ps.V(u + h, v) - ps.V(u - h, v)) / (2 * h)).epsilon(1e-7));
        CHECK(ps.V2(u, v) ==
              doctest::Approx((ps.V(u, v + h) - ps.V(u, v - h)) / (2 * h)).epsilon(1e-7));
        // chain rule partials of q
        CHECK(ps.q1(u, v) ==
              doctest::Approx((ps.q(u + h, v) - ps.q(u - h, v)) / (2 * h)).epsilon(1e-7));
        CHECK(ps.q2(u, v) ==
              doctest::Approx((ps.q(u, v + h) - ps.q(u, v - h)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("polar normal lies in the polar plane and matches the general formula") {
    RuledSurfaceSpec spec = fix_g();
    FramePath path = integrate_frame(spec);
    PolarSupport ps(spec, ScalarExpr::parse("exp(V/2)", "V"));
    SupportFunction sf = ps.as_support();
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    for (int i = 0; i < 40; ++i) {
        double u = pu(rng), v = pv(rng);
        FrameVec y = polar_normal(spec, ps, u, v);
        CHECK(y.ce == doctest::Approx(0.0).epsilon(1e-14).scale(1)); // no generator component
        FrameVec yg = relative_normal_general(spec, sf, u, v);
        CHECK(yg.ce == doctest::Approx(0.0).epsilon(1e-9).scale(1));
        CHECK(y.cn == doctest::Approx(yg.cn).epsilon(1e-9));
        CHECK(y.cz == doctest::Approx(yg.cz).epsilon(1e-9));
        // support identity
        SurfaceJet jet = surface_jet(spec, path, u, v);
        CHECK(dot(jet.xi, y.ambient(path.at(u))) == doctest::Approx(ps.q(u, v)).epsilon(1e-9));
    }
}

TEST_CASE("shape operator: K = det B and H = trace B / 2") {
    RuledSurfaceSpec spec = fix_g();
    PolarSupport ps(spec, ScalarExpr::parse("2+sin(V)", "V"));
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    for (int i = 0; i < 40; ++i) {
        double u = pu(rng), v = pv(rng);
        PolarShape shape = polar_shape_and_curvatures(spec, ps, u, v);
        CHECK(shape.K == doctest::Approx(shape.B.det()).epsilon(1e-9));
        CHECK(shape.H == doctest::Approx(shape.B.trace() / 2).epsilon(1e-9));
    }
}

TEST_CASE("spot values on the circular fixture with f = cos V") {
    RuledSurfaceSpec spec = fix_c();
    PolarSupport ps(spec, ScalarExpr::parse("cos(V)", "V"));

    // at (0, 1): B = [[0, 1], [0, 0]], K = H = 0
    PolarShape s0 = polar_shape_and_curvatures(spec, ps, 0.0, 1.0);
    CHECK(s0.B.a11 == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(s0.B.a12 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s0.B.a21 == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(s0.B.a22 == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(s0.K == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(s0.H == doctest::Approx(0.0).epsilon(1e-9).scale(1));

    // at (pi/2, 2): J = 9/4, S = -3/4, T = (1, 4), Q = (-1/(8 sqrt 5), 0)
    const double u = M_PI / 2, v = 2.0;
    PickScalars pick = polar_pick_scalar(spec, ps, u, v);
    CHECK(pick.J == doctest::Approx(2.25).epsilon(1e-9));
    CHECK(pick.S == doctest::Approx(-0.75).epsilon(1e-9));
    TchebychevResult T = polar_tchebychev(spec, ps, u, v);
    CHECK(T.T1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(T.T2 == doctest::Approx(4.0).epsilon(1e-9));
    SupportVectorResult Q = polar_support_vector(spec, ps, u, v);
    CHECK(Q.Q1 == doctest::Approx(-1.0 / (8 * std::sqrt(5.0))).epsilon(1e-9));
    CHECK(Q.Q2 == doctest::Approx(0.0).epsilon(1e-9).scale(1));
}

TEST_CASE("structural identity 3H = J + 3S") {
    for (const char* f : {"cos(V)", "exp(V/2)", "2+sin(V)"}) {
        RuledSurfaceSpec spec = fix_g();
        PolarSupport ps(spec, ScalarExpr::parse(f, "V"));
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.9, 2.9);
        for (int i = 0; i < 60; ++i) {
            double u = pu(rng), v = pv(rng);
            if (std::abs(ps.q_raw(u, v)) < 1e-4) continue;
            PolarShape shape = polar_shape_and_curvatures(spec, ps, u, v);
            PickScalars pick = polar_pick_scalar(spec, ps, u, v);
            CHECK(std::abs(3 * shape.H - pick.J - 3 * pick.S) <=
                  1e-8 * (1 + std::abs(pick.J)));
        }
    }
}

TEST_CASE("Tchebychev field: displays, rotations and the potential") {
    RuledSurfaceSpec spec = fix_g();
    PolarSupport ps(spec, ScalarExpr::parse("2+sin(V)", "V"));
    SupportFunction sf = ps.as_support();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    for (int i = 0; i < 25; ++i) {
        double u = pu(rng), v = pv(rng);
        TchebychevResult T = polar_tchebychev(spec, ps, u, v);
        CHECK(T.display_consistent);
        CHECK(T.curl_I == doctest::Approx(T.curl_I_display).epsilon(1e-9).scale(1));
        CHECK(T.curl_G == doctest::Approx(0.0).epsilon(1e-10).scale(1));
        // closed displays equal the generic operators applied to the field
        FieldScalars fs = field_calculus(spec, sf, polar_tchebychev_field(spec, ps), u, v);
        CHECK(T.div_I == doctest::Approx(fs.div_I).epsilon(1e-9).scale(1));
        CHECK(T.div_G == doctest::Approx(fs.div_G).epsilon(1e-9).scale(1));
        CHECK(fs.curl_G == doctest::Approx(0.0).epsilon(1e-9).scale(1));
        // T is the G-gradient of its potential
        RelativeMetric m = relative_metric(spec, sf, u, v);
        auto tau = [&](double uu, double vv) {
            return std::log(std::abs(spec.w(uu, vv) * ps.q(uu, vv)) /
                            std::sqrt(std::abs(spec.delta(uu))));
        };
        double t1 = oracle::fd_partial(tau, u, v, 1);
        double t2 = oracle::fd_partial(tau, u, v, 2);
        CHECK(m.Ginv.a11 * t1 + m.Ginv.a12 * t2 ==
              doctest::Approx(T.T1).epsilon(1e-6).scale(1));
        CHECK(m.Ginv.a12 * t1 + m.Ginv.a22 * t2 ==
              doctest::Approx(T.T2).epsilon(1e-6).scale(1));
    }
}

TEST_CASE("support vector field: displays and potential 1/(4q)") {
    RuledSurfaceSpec spec = fix_g();
    PolarSupport ps(spec, ScalarExpr::parse("exp(V/2)", "V"));
    SupportFunction sf = ps.as_support();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    for (int i = 0; i < 25; ++i) {
        double u = pu(rng), v = pv(rng);
        SupportVectorResult Q = polar_support_vector(spec, ps, u, v);
        CHECK(Q.potential == doctest::Approx(1.0 / (4 * ps.q(u, v))).epsilon(1e-12));
        CHECK(Q.curl_G == doctest::Approx(0.0).epsilon(1e-10).scale(1));
        FieldScalars fs = field_calculus(spec, sf, polar_support_vector_field(spec, ps), u, v);
        CHECK(Q.div_I == doctest::Approx(fs.div_I).epsilon(1e-9).scale(1));
        CHECK(Q.curl_I == doctest::Approx(fs.curl_I).epsilon(1e-9).scale(1));
        CHECK(Q.div_G == doctest::Approx(fs.div_G).epsilon(1e-9).scale(1));
        CHECK(fs.curl_G == doctest::Approx(0.0).epsilon(1e-9).scale(1));
        // Q = (1/4) grad_G (1/q)
        RelativeMetric m = relative_metric(spec, sf, u, v);
        auto invq = [&](double uu, double vv) { return 1.0 / ps.q(uu, vv); };
        double p1 = oracle::fd_partial(invq, u, v, 1);
        double p2 = oracle::fd_partial(invq, u, v, 2);
        CHECK(0.25 * (m.Ginv.a11 * p1 + m.Ginv.a12 * p2) ==
              doctest::Approx(Q.Q1).epsilon(1e-6).scale(1));
        CHECK(0.25 * (m.Ginv.a12 * p1 + m.Ginv.a22 * p2) ==
              doctest::Approx(Q.Q2).epsilon(1e-6).scale(1));
    }
}

TEST_CASE("classification predicates") {
    RuledSurfaceSpec spec = fix_c();
    // harmonic support: K and H vanish identically
    Classification ch = classify(spec, PolarSupport(spec, ScalarExpr::parse("cos(V)", "V")));
    CHECK(ch.K_zero);
    CHECK(ch.H_zero);
    CHECK_FALSE(ch.right_helicoid);
    CHECK_FALSE(ch.J_zero);
    CHECK_FALSE(ch.Q_incompressible_I);

    // exponential support: div^I Q vanishes identically
    Classification ce = classify(spec, PolarSupport(spec, ScalarExpr::parse("exp(2*V)", "V")));
    CHECK(ce.Q_incompressible_I);
    CHECK_FALSE(ce.K_zero);

    // generic support: none of the special predicates
    Classification cg = classify(spec, PolarSupport(spec, ScalarExpr::parse("2+sin(V)", "V")));
    CHECK_FALSE(cg.K_zero);
    CHECK_FALSE(cg.H_zero);
    CHECK_FALSE(cg.Q_incompressible_I);

    // right helicoid: J vanishes for any admissible support
    RuledSurfaceSpec heli(ScalarExpr::constant(2), ScalarExpr::constant(0),
                          ScalarExpr::constant(0), 0.0, 6.5);
    Classification cr = classify(heli, PolarSupport(heli, ScalarExpr::parse("2+sin(V)", "V")));
    CHECK(cr.right_helicoid);
    CHECK(cr.J_zero);
    CHECK(cr.H_zero);
    CHECK(cr.Q_incompressible_I);
}

TEST_CASE("J display agrees with the Euclidean Pick invariant scaling") {
    // J = (qv + delta qdot)(Jhat + 3 Htilde qdot/(delta q)) and J_EUK = v Jhat
    RuledSurfaceSpec spec = fix_c();
    PolarSupport ps(spec, ScalarExpr::constant(1.0)); // Euclidean normalization
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    for (int i = 0; i < 30; ++i) {
        double u = pu(rng), v = pv(rng);
        PickScalars pick = polar_pick_scalar(spec, ps, u, v);
        // with q == 1, qdot == 0 the general J reduces to the Euclidean one
        CHECK(pick.J == doctest::Approx(pick.J_euk).epsilon(1e-12));
    }
}

TEST_SUITE_END();
