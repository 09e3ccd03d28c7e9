#pragma once

#include <vector>

#include "ruledkit/antiderivative.hpp"
#include "ruledkit/expr.hpp"
#include "ruledkit/vec3.hpp"

namespace ruledkit {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Skew ruled surface given by its fundamental invariants
// delta (distribution parameter), kappa (conical curvature),
// lambda = cot(striction angle), on the parameter interval [u_min, u_max].
// The surface is fixed up to rigid motion by the initial frame and
// striction point at u0.
class RuledSurfaceSpec {
public:
    RuledSurfaceSpec(ScalarExpr delta, ScalarExpr kappa, ScalarExpr lambda,
                     double u_min, double u_max);

    // validates: |delta| >= 1e-8 on a 10^4-point sample, kappa finite,
    // initial frame orthonormal within 1e-12
    void validate() const;

    double delta(double u) const { return delta_.eval(u); }
    double delta_p(double u) const { return delta_p_.eval(u); }
    double delta_pp(double u) const { return delta_pp_.eval(u); }
    double kappa(double u) const { return kappa_.eval(u); }
    double kappa_p(double u) const { return kappa_p_.eval(u); }
    double lambda(double u) const { return lambda_.eval(u); }
    double lambda_p(double u) const { return lambda_p_.eval(u); }

    const ScalarExpr& delta_expr() const { return delta_; }
    const ScalarExpr& kappa_expr() const { return kappa_; }
    const ScalarExpr& lambda_expr() const { return lambda_; }

    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    double u0() const { return u0_; }
    void set_u0(double u0);

    Vec3 e0() const { return e0_; }
    Vec3 n0() const { return n0_; }
    Vec3 z0() const { return z0_; }
    Vec3 s0() const { return s0_; }
    void set_initial_frame(const Vec3& e0, const Vec3& n0, const Vec3& z0, const Vec3& s0);

    // integral of kappa from u0, built lazily on first use
    const Antiderivative& kappa_integral() const;

    double w(double u, double v) const;

    // true when delta is a nonzero constant and kappa == lambda == 0
    // (sampled on a 10^4-point grid, tolerance 1e-12)
    bool is_right_helicoid() const;

private:
    ScalarExpr delta_, kappa_, lambda_;
    ScalarExpr delta_p_, delta_pp_, kappa_p_, lambda_p_;
    double u_min_, u_max_, u0_;
    Vec3 e0_{1, 0, 0}, n0_{0, 1, 0}, z0_{0, 0, 1}, s0_{0, 0, 0};
    mutable std::shared_ptr<const Antiderivative> kappa_int_;
};

struct FrameSample {
    Vec3 e, n, z; // orthonormal moving frame
    Vec3 s;       // striction point
};

// Moving frame and striction curve from integrating
// e' = n, n' = -e + kappa z, z' = -kappa n, s' = delta lambda e + delta z.
// Fixed-step RK4 with per-step Gram-Schmidt; dense output by quintic Hermite
// using the ODE right-hand side and its derivative, so the interpolant is C^2
// across panels and supports finite-difference curvature probes.
// Immutable after integration.
class FramePath {
public:
    FrameSample at(double u) const;

    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    double max_orthonormality_drift() const { return max_drift_; }
    int reorthonormalizations() const { return reorth_count_; }

private:
    friend FramePath integrate_frame(const RuledSurfaceSpec& spec);
    double u_min_ = 0.0, u_max_ = 0.0, h_ = 0.0;
    std::vector<FrameSample> samples_;
    std::vector<double> kappa_at_;   // kappa at sample points, for Hermite slopes
    std::vector<double> dlam_at_;    // delta*lambda at sample points
    std::vector<double> delta_at_;
    std::vector<double> kappa_p_at_; // kappa' at sample points, for curvature data
    std::vector<double> dlam_p_at_;  // (delta*lambda)' at sample points
    std::vector<double> delta_p_at_;
    double max_drift_ = 0.0;
    int reorth_count_ = 0;
};

FramePath integrate_frame(const RuledSurfaceSpec& spec);

// first-order data of the position map at (u, v)
struct SurfaceJet {
    Vec3 x;      // s(u) + v e(u)
    Vec3 x1, x2; // partials in u, v
    Vec3 xi;     // Euclidean unit normal
    double w;    // sqrt(delta^2 + v^2)
};

SurfaceJet surface_jet(const RuledSurfaceSpec& spec, const FramePath& frames,
                       double u, double v);

struct FundamentalForms {
    SymTensor2 first;  // g_ij
    SymTensor2 second; // h_ij (h22 = 0 on a ruled surface)
};

FundamentalForms fundamental_forms(const RuledSurfaceSpec& spec, double u, double v);

struct EuclideanCurvatures {
    double K; // Gaussian, always negative on a skew ruled surface
    double H; // mean
};

EuclideanCurvatures euclidean_curvatures(const RuledSurfaceSpec& spec, double u, double v);

} // namespace ruledkit
