#include <cmath>
#include <random>

#include <doctest.h>

#include "ruledkit/oracle.hpp"
#include "ruledkit/special.hpp"

using namespace ruledkit;

namespace {

RuledSurfaceSpec fix_c() {
    return {ScalarExpr::constant(1), ScalarExpr::constant(1), ScalarExpr::constant(0), 0.0, 6.5};
}

RuledSurfaceSpec fix_h() {
    return {ScalarExpr::constant(1), ScalarExpr::constant(0), ScalarExpr::constant(0), 0.0, 6.5};
}

} // namespace

TEST_SUITE_BEGIN("special");

TEST_CASE("constructor rejects the zero support") {
    RuledSurfaceSpec spec = fix_c();
    CHECK_THROWS_AS(SpecialPolar(spec, 0.0, 0.0), SupportError);
}

TEST_CASE("relative image degenerates: y is constant along rulings") {
    RuledSurfaceSpec spec = fix_c();
    SpecialPolar sp(spec, 1.0, 0.5);
    const PolarSupport& ps = sp.as_polar();
    for (double u : {0.3, 1.9, 4.2})
        for (double v : {-2.0, 0.5, 2.5}) {
            double h = 1e-5;
            FrameVec yp = polar_normal(spec, ps, u, v + h);
            FrameVec ym = polar_normal(spec, ps, u, v - h);
            CHECK(std::abs(yp.cn - ym.cn) / (2 * h) < 1e-8);
            CHECK(std::abs(yp.cz - ym.cz) / (2 * h) < 1e-8);
            // and y equals the Gamma* point for this u
            GammaStarResult gs = gamma_star(sp, u);
            FrameVec y = polar_normal(spec, ps, u, v);
            CHECK(y.cn == doctest::Approx(gs.y.cn).epsilon(1e-10));
            CHECK(y.cz == doctest::Approx(gs.y.cz).epsilon(1e-10));
        }
}

TEST_CASE("change of basis: rotating (c1, c2) shifts the V phase") {
    RuledSurfaceSpec spec = fix_c();
    double phi = 0.7;
    SpecialPolar a(spec, std::cos(phi), std::sin(phi));
    PolarSupport shifted(spec, ScalarExpr::parse("cos(V - 0.7)", "V"));
    for (double u : {0.4, 2.8})
        for (double v : {-1.0, 1.5})
            CHECK(a.as_polar().q_raw(u, v) ==
                  doctest::Approx(shifted.q_raw(u, v)).epsilon(1e-12));
}

TEST_CASE("Gamma* Frenet invariants match the numeric oracle") {
    for (bool circ : {false, true}) {
        RuledSurfaceSpec spec = circ ? fix_c() : fix_h();
        FramePath path = integrate_frame(spec);
        SpecialPolar sp(spec, 1.0, 0.4);
        auto curve = [&](double u) {
            return gamma_star(sp, u).y.ambient(path.at(u));
        };
        // samples stay away from the zeros of C = c1 cos K - c2 sin K on the
        // circular fixture, where Gamma* has a singular point and kappa*,
        // sigma* blow up beyond what a finite-difference probe can follow
        for (double u : {0.5, 2.0, 3.3, 5.0}) {
            GammaStarResult gs = gamma_star(sp, u);
            oracle::FrenetResult fr = oracle::frenet_invariants(curve, u);
            CHECK(fr.curvature == doctest::Approx(gs.kappa_star).epsilon(1e-5));
            CHECK(fr.torsion == doctest::Approx(gs.sigma_star).epsilon(1e-5).scale(1));
        }
    }
}

TEST_CASE("constant slope: kappa*/sigma* = +/- 1/kappa on the circular fixture") {
    RuledSurfaceSpec spec = fix_c();
    SpecialPolar sp(spec, 1.0, 0.4);
    for (double u : {0.2, 1.1, 2.9, 4.4, 6.1}) {
        GammaStarResult gs = gamma_star(sp, u);
        REQUIRE(gs.slope_ratio.has_value());
        CHECK(std::abs(*gs.slope_ratio * spec.kappa(u)) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("helicoidal case: Gamma* is a circle with zero torsion") {
    RuledSurfaceSpec spec = fix_h();
    SpecialPolar sp(spec, 0.8, 0.6);
    for (double u : {0.5, 2.0, 4.5}) {
        GammaStarResult gs = gamma_star(sp, u);
        CHECK(gs.sigma_star == doctest::Approx(0.0).epsilon(1e-12).scale(1));
        CHECK_FALSE(gs.slope_ratio.has_value());
        // kappa = 0: C and S are the constants c1, c2
        CHECK(gs.kappa_star == doctest::Approx(1.0 / 0.8).epsilon(1e-12));
    }
}

TEST_CASE("special field displays agree with the parametric polar fields") {
    RuledSurfaceSpec spec = fix_c();
    FramePath path = integrate_frame(spec);
    SpecialPolar sp(spec, 1.0, 0.5);
    const PolarSupport& ps = sp.as_polar();
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> pu(0.3, 6.2), pv(-2.5, 2.5);
    int checked = 0;
    for (int i = 0; checked < 25 && i < 200; ++i) {
        double u = pu(rng), v = pv(rng);
        if (std::abs(ps.q_raw(u, v)) < 1e-2) continue;
        ++checked;
        SpecialFields f = special_fields(sp, u, v);
        PickScalars pick = polar_pick_scalar(spec, ps, u, v);
        CHECK(f.J == doctest::Approx(pick.J).epsilon(1e-9));
        // ambient forms of the frame displays equal T^i x_/i and Q^i x_/i
        SurfaceJet jet = surface_jet(spec, path, u, v);
        FrameSample fs = path.at(u);
        TchebychevResult T = polar_tchebychev(spec, ps, u, v);
        SupportVectorResult Q = polar_support_vector(spec, ps, u, v);
        Vec3 Tamb = T.T1 * jet.x1 + T.T2 * jet.x2;
        Vec3 Qamb = Q.Q1 * jet.x1 + Q.Q2 * jet.x2;
        CHECK(norm(f.T.ambient(fs) - Tamb) < 1e-9 * (1 + norm(Tamb)));
        CHECK(norm(f.Q.ambient(fs) - Qamb) < 1e-9 * (1 + norm(Qamb)));
    }
    CHECK(checked == 25);
}

TEST_SUITE_END();
