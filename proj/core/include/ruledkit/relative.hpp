#pragma once

#include <functional>

#include "ruledkit/surface.hpp"

namespace ruledkit {

struct SupportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SupportFamily { euclidean, manhart, polar, custom };

// support function q = <xi, y> with exact first partials
class SupportFunction {
public:
    using Eval = std::function<double(double, double)>;

    static constexpr double q_min = 1e-8;

    static SupportFunction euclidean();
    static SupportFunction manhart(const RuledSurfaceSpec& spec, double a);
    static SupportFunction custom(Eval q, Eval q1, Eval q2);
    static SupportFunction make(SupportFamily family, Eval q, Eval q1, Eval q2,
                                double param = 0.0);

    // throws SupportError when |q| < q_min
    double q(double u, double v) const;
    double q1(double u, double v) const;
    double q2(double u, double v) const;
    double q_raw(double u, double v) const { return q_(u, v); } // no q_min check

    SupportFamily family() const { return family_; }
    double param() const { return param_; } // manhart exponent a

    // sampling check of |q| >= q_min on [u_min,u_max] x [v_lo,v_hi]
    void check_window(const RuledSurfaceSpec& spec, double v_lo, double v_hi,
                      int nu = 64, int nv = 64) const;

private:
    SupportFamily family_ = SupportFamily::custom;
    double param_ = 0.0;
    Eval q_, q1_, q2_;
};

SupportFunction make_support(SupportFamily family, const RuledSurfaceSpec& spec,
                             double param = 0.0);

// vector with components in the moving frame {e, n, z}
struct FrameVec {
    double ce = 0.0, cn = 0.0, cz = 0.0;

    Vec3 ambient(const FrameSample& f) const { return ce * f.e + cn * f.n + cz * f.z; }
    double norm() const { return std::sqrt(ce * ce + cn * cn + cz * cz); }
};

// relative normal y = y1 e + y2 n + y3 z reconstructed from the support function
FrameVec relative_normal_general(const RuledSurfaceSpec& spec, const SupportFunction& q,
                                 double u, double v);

struct RelativeMetric {
    SymTensor2 G;    // G_ij = h_ij / q, indefinite
    SymTensor2 Ginv; // contravariant components
};

RelativeMetric relative_metric(const RuledSurfaceSpec& spec, const SupportFunction& q,
                               double u, double v);

// contravariant vector field on the parameter domain
struct VectorField2 {
    std::function<double(double, double)> X1, X2;
    // exact partials when the family provides them; otherwise central differences
    std::function<double(double, double)> dX1_du, dX1_dv, dX2_du, dX2_dv;

    double partial(int comp, int wrt, double u, double v) const;
};

struct FieldScalars {
    double div_I = 0.0, curl_I = 0.0, div_G = 0.0, curl_G = 0.0;
};

// divergence and rotation with respect to the first fundamental form and,
// by the same template with (g_ij, w) -> (G_ij, sqrt|det G|), the relative metric
FieldScalars field_calculus(const RuledSurfaceSpec& spec, const SupportFunction& q,
                            const VectorField2& X, double u, double v);

struct FieldSample {
    double X1 = 0.0, X2 = 0.0;
};

struct GeneralFields {
    FieldSample T; // Tchebychev vector, T^m = (1/2) A_i^im
    FieldSample Q; // support vector, (1/4) grad_G(1/q)
};

GeneralFields general_fields(const RuledSurfaceSpec& spec, const SupportFunction& q,
                             double u, double v);

// the same fields as evaluator objects, for use with field_calculus
VectorField2 general_tchebychev_field(const RuledSurfaceSpec& spec, const SupportFunction& q);
VectorField2 general_support_vector_field(const RuledSurfaceSpec& spec, const SupportFunction& q);

} // namespace ruledkit
