#pragma once

#include "ruledkit/relative.hpp"

namespace ruledkit {

// polar support function q = f(V), V = arctan(v/delta) - int kappa du.
// f must be C^2 and nonzero on the admissible window; derivatives of f
// are exact (symbolic).
class PolarSupport {
public:
    PolarSupport(const RuledSurfaceSpec& spec, ScalarExpr f);

    const RuledSurfaceSpec& spec() const { return *spec_; }
    const ScalarExpr& f() const { return f_; }

    double V(double u, double v) const;
    double V1(double u, double v) const; // = -v delta'/w^2 - kappa
    double V2(double u, double v) const; // = delta/w^2

    double q(double u, double v) const;      // throws SupportError when |q| < q_min
    double q_raw(double u, double v) const;  // no vanishing check
    double qdot(double u, double v) const;   // df/dV at V(u,v)
    double qddot(double u, double v) const;
    double qdddot(double u, double v) const;
    double q1(double u, double v) const { return qdot(u, v) * V1(u, v); }
    double q2(double u, double v) const { return qdot(u, v) * V2(u, v); }

    // view as a general support function (family tag polar, exact partials)
    SupportFunction as_support() const;

private:
    const RuledSurfaceSpec* spec_;
    ScalarExpr f_, fd_, fdd_, fddd_;
};

double polar_V(const RuledSurfaceSpec& spec, double u, double v);

// y = ((delta q - qdot v)/w) n - ((q v + delta qdot)/w) z, in the polar plane
FrameVec polar_normal(const RuledSurfaceSpec& spec, const PolarSupport& ps, double u, double v);

struct PolarShape {
    Mat2 B;
    double K = 0.0; // det B
    double H = 0.0; // trace B / 2
};

PolarShape polar_shape_and_curvatures(const RuledSurfaceSpec& spec, const PolarSupport& ps,
                                      double u, double v);

struct PickScalars {
    double J = 0.0;
    double J_euk = 0.0; // Pick invariant of the Euclidean normalization
    double S = 0.0;     // scalar curvature of the relative metric
};

PickScalars polar_pick_scalar(const RuledSurfaceSpec& spec, const PolarSupport& ps,
                              double u, double v);

struct TchebychevResult {
    double T1 = 0.0, T2 = 0.0;
    double div_I = 0.0;
    double curl_I = 0.0;          // generic operator applied to the components
    double curl_I_display = 0.0;  // printed closed form (delta^3 brace group restored)
    bool display_consistent = true;
    double div_G = 0.0;
    double curl_G = 0.0; // identically zero
    double potential = 0.0; // tau = ln(w q / sqrt|delta|)
};

TchebychevResult polar_tchebychev(const RuledSurfaceSpec& spec, const PolarSupport& ps,
                                  double u, double v);

struct SupportVectorResult {
    double Q1 = 0.0, Q2 = 0.0;
    double div_I = 0.0, curl_I = 0.0, div_G = 0.0;
    double curl_G = 0.0;    // identically zero
    double potential = 0.0; // 1/(4q)
};

SupportVectorResult polar_support_vector(const RuledSurfaceSpec& spec, const PolarSupport& ps,
                                         double u, double v);

// the polar T and Q fields as evaluator objects with exact component partials
VectorField2 polar_tchebychev_field(const RuledSurfaceSpec& spec, const PolarSupport& ps);
VectorField2 polar_support_vector_field(const RuledSurfaceSpec& spec, const PolarSupport& ps);

struct Classification {
    bool right_helicoid = false;
    bool K_zero = false;             // f in span{cos, sin}
    bool H_zero = false;             // K_zero or right helicoid
    bool J_zero = false;             // right helicoid
    bool Q_incompressible_I = false; // f = c2 exp(c1 V) or right helicoid
    int grid_n = 0;
    double tolerance = 0.0;
};

// sampling-based predicates on a grid_n x grid_n grid over
// [u_min, u_max] x [v_lo, v_hi], relative tolerance tol
Classification classify(const RuledSurfaceSpec& spec, const PolarSupport& ps,
                        double v_lo = -3.0, double v_hi = 3.0, int grid_n = 40,
                        double tol = 1e-9);

} // namespace ruledkit
