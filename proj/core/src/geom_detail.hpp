#pragma once

#include <cmath>

#include "ruledkit/surface.hpp"

namespace ruledkit::detail {

// exact partials of the geometric coefficients at (u, v)
struct GeomJet {
    double d, dp, dpp, k, kp, l, lp;
    double w, w2;
    double w_1, w_2; // partials of w
    double g11, g12, g22;
    double g11_1, g11_2, g12_1; // g12_2 = 0, g22_i = 0
    double h11, h12;
    double h11_1, h11_2, h12_1, h12_2;
};

inline GeomJet geom_jet(const RuledSurfaceSpec& spec, double u, double v) {
    GeomJet g;
    g.d = spec.delta(u);
    g.dp = spec.delta_p(u);
    g.dpp = spec.delta_pp(u);
    g.k = spec.kappa(u);
    g.kp = spec.kappa_p(u);
    g.l = spec.lambda(u);
    g.lp = spec.lambda_p(u);
    g.w2 = g.d * g.d + v * v;
    g.w = std::sqrt(g.w2);
    g.w_1 = g.d * g.dp / g.w;
    g.w_2 = v / g.w;
    g.g11 = g.w2 + g.d * g.d * g.l * g.l;
    g.g12 = g.d * g.l;
    g.g22 = 1.0;
    g.g11_1 = 2 * g.d * g.dp + 2 * g.d * g.dp * g.l * g.l + 2 * g.d * g.d * g.l * g.lp;
    g.g11_2 = 2 * v;
    g.g12_1 = g.dp * g.l + g.d * g.lp;
    double P = g.k * g.w2 + g.dp * v - g.d * g.d * g.l;
    double P_1 = g.kp * g.w2 + 2 * g.k * g.d * g.dp + g.dpp * v - 2 * g.d * g.dp * g.l -
                 g.d * g.d * g.lp;
    double P_2 = 2 * g.k * v + g.dp;
    g.h11 = -P / g.w;
    g.h11_1 = -(P_1 * g.w - P * g.w_1) / g.w2;
    g.h11_2 = -(P_2 * g.w - P * g.w_2) / g.w2;
    g.h12 = g.d / g.w;
    g.h12_1 = g.dp * v * v / (g.w2 * g.w);
    g.h12_2 = -g.d * v / (g.w2 * g.w);
    return g;
}

} // namespace ruledkit::detail
