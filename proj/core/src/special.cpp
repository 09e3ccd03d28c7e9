#include "ruledkit/special.hpp"

#include <cmath>

namespace ruledkit {

namespace {

ScalarExpr harmonic_expr(double c1, double c2) {
    ScalarExpr V = ScalarExpr::variable();
    return ScalarExpr::constant(c1) * cos(V) + ScalarExpr::constant(c2) * sin(V);
}

} // namespace

SpecialPolar::SpecialPolar(const RuledSurfaceSpec& spec, double c1, double c2)
    : spec_(&spec), c1_(c1), c2_(c2), polar_(spec, harmonic_expr(c1, c2)) {
    if (c1 * c1 + c2 * c2 <= 0.0)
        throw SupportError("special polar normalization needs c1^2 + c2^2 > 0");
}

GammaStarResult gamma_star(const SpecialPolar& sp, double u) {
    const RuledSurfaceSpec& spec = sp.spec();
    double K = spec.kappa_integral()(u);
    double cosK = std::cos(K), sinK = std::sin(K);
    double C = sp.c1() * cosK - sp.c2() * sinK; // frame coefficient of n
    double S = sp.c2() * cosK + sp.c1() * sinK;

    GammaStarResult out;
    out.y = {0.0, C, -S};
    if (std::abs(C) < 1e-12)
        throw SupportError("Gamma* curvature denominator vanishes at this u");
    out.kappa_star = 1.0 / std::abs(C);
    double k = spec.kappa(u);
    out.sigma_star = -k / C;
    if (out.sigma_star != 0.0)
        out.slope_ratio = out.kappa_star / out.sigma_star;
    return out;
}

SpecialFields special_fields(const SpecialPolar& sp, double u, double v) {
    const RuledSurfaceSpec& spec = sp.spec();
    double c1 = sp.c1(), c2 = sp.c2();
    double d = spec.delta(u);
    double dp = spec.delta_p(u);
    double k = spec.kappa(u);
    double l = spec.lambda(u);
    double w = spec.w(u, v);
    double K = spec.kappa_integral()(u);
    double cosK = std::cos(K), sinK = std::sin(K);
    double Vv = polar_V(spec, u, v);
    double q = c1 * std::cos(Vv) + c2 * std::sin(Vv);
    if (std::abs(q) < SupportFunction::q_min)
        throw SupportError("special support function vanishes at this point");
    double S = c2 * cosK + c1 * sinK;

    SpecialFields out;
    out.J = 3 * S / (2 * d * d * w * q) *
            (cosK * (k * (c2 * v * v + 2 * c1 * d * v - c2 * d * d) +
                     d * (-c2 * d * l + c1 * dp)) +
             sinK * (k * (c1 * v * v - 2 * c2 * d * v - c1 * d * d) -
                     d * (c1 * d * l + c2 * dp)));
    out.T = {w / (2 * d * d) * q * (2 * k * v + dp), v / d * S, S};
    double qd = -c1 * std::sin(Vv) + c2 * std::cos(Vv);
    out.Q = {0.0, -qd * v / (4 * w * q), -qd * d / (4 * w * q)};
    return out;
}

} // namespace ruledkit
