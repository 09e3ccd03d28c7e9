#pragma once

#include <optional>

#include "ruledkit/polar.hpp"

namespace ruledkit {

// the special polar normalization q = c1 cos V + c2 sin V, whose relative
// image degenerates into the curve Gamma*
class SpecialPolar {
public:
    SpecialPolar(const RuledSurfaceSpec& spec, double c1, double c2);

    const RuledSurfaceSpec& spec() const { return *spec_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }

    // view as the equivalent PolarSupport with f = c1 cos V + c2 sin V
    const PolarSupport& as_polar() const { return polar_; }

private:
    const RuledSurfaceSpec* spec_;
    double c1_, c2_;
    PolarSupport polar_;
};

struct GammaStarResult {
    FrameVec y;         // position of Gamma* in the moving frame at u
    double kappa_star;  // curvature
    double sigma_star;  // torsion (signed)
    // kappa*/sigma* = +/- 1/kappa; empty when kappa = 0 (sigma* = 0)
    std::optional<double> slope_ratio;
};

GammaStarResult gamma_star(const SpecialPolar& sp, double u);

struct SpecialFields {
    double J = 0.0;
    FrameVec T; // Tchebychev vector in the frame {e, n, z}
    FrameVec Q; // support vector in the frame {e, n, z}
};

SpecialFields special_fields(const SpecialPolar& sp, double u, double v);

} // namespace ruledkit
