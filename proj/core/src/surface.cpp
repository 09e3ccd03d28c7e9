#include "ruledkit/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ruledkit {

RuledSurfaceSpec::RuledSurfaceSpec(ScalarExpr delta, ScalarExpr kappa, ScalarExpr lambda,
                                   double u_min, double u_max)
    : delta_(std::move(delta)),
      kappa_(std::move(kappa)),
      lambda_(std::move(lambda)),
      delta_p_(delta_.derivative()),
      delta_pp_(delta_p_.derivative()),
      kappa_p_(kappa_.derivative()),
      lambda_p_(lambda_.derivative()),
      u_min_(u_min),
      u_max_(u_max),
      u0_(u_min) {
    if (!(u_min < u_max)) throw SpecError("u_min must be < u_max");
    validate();
}

void RuledSurfaceSpec::validate() const {
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
        double u = u_min_ + (u_max_ - u_min_) * i / n;
        double d = delta_.eval(u);
        if (std::abs(d) < 1e-8)
            throw SpecError("distribution parameter vanishes on the domain (|delta| < 1e-8)");
        (void)kappa_.eval(u);
        (void)lambda_.eval(u);
    }
    auto unit = [](const Vec3& v) { return std::abs(norm(v) - 1.0) <= 1e-12; };
    if (!unit(e0_) || !unit(n0_) || !unit(z0_) ||
        std::abs(dot(e0_, n0_)) > 1e-12 || std::abs(dot(e0_, z0_)) > 1e-12 ||
        std::abs(dot(n0_, z0_)) > 1e-12)
        throw SpecError("initial frame is not orthonormal within 1e-12");
    if (triple(e0_, n0_, z0_) < 0.0)
        throw SpecError("initial frame is not right-handed");
}

void RuledSurfaceSpec::set_u0(double u0) {
    if (u0 < u_min_ || u0 > u_max_) throw SpecError("u0 outside domain");
    u0_ = u0;
    kappa_int_.reset();
}

void RuledSurfaceSpec::set_initial_frame(const Vec3& e0, const Vec3& n0, const Vec3& z0,
                                         const Vec3& s0) {
    e0_ = e0;
    n0_ = n0;
    z0_ = z0;
    s0_ = s0;
    validate();
}

const Antiderivative& RuledSurfaceSpec::kappa_integral() const {
    if (!kappa_int_)
        kappa_int_ = std::make_shared<Antiderivative>(kappa_, u0_, u_min_, u_max_);
    return *kappa_int_;
}

double RuledSurfaceSpec::w(double u, double v) const {
    return std::hypot(delta(u), v);
}

bool RuledSurfaceSpec::is_right_helicoid() const {
    const int n = 10000;
    const double tol = 1e-10;
    double d0 = delta(u0_);
    for (int i = 0; i <= n; ++i) {
        double u = u_min_ + (u_max_ - u_min_) * i / n;
        if (std::abs(delta(u) - d0) > tol * (1.0 + std::abs(d0))) return false;
        if (std::abs(kappa(u)) > tol) return false;
        if (std::abs(lambda(u)) > tol) return false;
    }
    return true;
}

namespace {

struct FrameState {
    Vec3 e, n, z, s;
};

FrameState rhs(const RuledSurfaceSpec& spec, double u, const FrameState& y) {
    double k = spec.kappa(u);
    double d = spec.delta(u);
    double dl = d * spec.lambda(u);
    return {y.n, -y.e + k * y.z, -k * y.n, dl * y.e + d * y.z};
}

FrameState axpy(const FrameState& a, double c, const FrameState& b) {
    return {a.e + c * b.e, a.n + c * b.n, a.z + c * b.z, a.s + c * b.s};
}

double orthonormality_drift(const FrameState& y) {
    double m = 0.0;
    m = std::max(m, std::abs(norm(y.e) - 1.0));
    m = std::max(m, std::abs(norm(y.n) - 1.0));
    m = std::max(m, std::abs(norm(y.z) - 1.0));
    m = std::max(m, std::abs(dot(y.e, y.n)));
    m = std::max(m, std::abs(dot(y.e, y.z)));
    m = std::max(m, std::abs(dot(y.n, y.z)));
    return m;
}

void gram_schmidt(FrameState& y) {
    y.e = normalized(y.e);
    y.n = normalized(y.n - dot(y.n, y.e) * y.e);
    y.z = cross(y.e, y.n);
}

} // namespace

FramePath integrate_frame(const RuledSurfaceSpec& spec) {
    FramePath path;
    const double len = spec.u_max() - spec.u_min();
    const int nsteps = 1000; // h = 1e-3 * |I|
    const double h = len / nsteps;

    path.u_min_ = spec.u_min();
    path.u_max_ = spec.u_max();
    path.h_ = h;
    path.samples_.reserve(nsteps + 1);

    // anchor the initial data at u0 by integrating backwards to u_min first
    FrameState y{spec.e0(), spec.n0(), spec.z0(), spec.s0()};
    if (spec.u0() > spec.u_min()) {
        double u = spec.u0();
        const double hb = -h;
        while (u > spec.u_min() + 1e-14) {
            double step = std::max(hb, spec.u_min() - u);
            FrameState k1 = rhs(spec, u, y);
            FrameState k2 = rhs(spec, u + step / 2, axpy(y, step / 2, k1));
            FrameState k3 = rhs(spec, u + step / 2, axpy(y, step / 2, k2));
            FrameState k4 = rhs(spec, u + step, axpy(y, step, k3));
            y = axpy(y, step / 6,
                     {k1.e + 2 * k2.e + 2 * k3.e + k4.e, k1.n + 2 * k2.n + 2 * k3.n + k4.n,
                      k1.z + 2 * k2.z + 2 * k3.z + k4.z, k1.s + 2 * k2.s + 2 * k3.s + k4.s});
            gram_schmidt(y);
            u += step;
        }
    }

    auto push = [&](double u, const FrameState& st) {
        path.samples_.push_back({st.e, st.n, st.z, st.s});
        path.kappa_at_.push_back(spec.kappa(u));
        path.delta_at_.push_back(spec.delta(u));
        path.dlam_at_.push_back(spec.delta(u) * spec.lambda(u));
        path.kappa_p_at_.push_back(spec.kappa_p(u));
        path.delta_p_at_.push_back(spec.delta_p(u));
        path.dlam_p_at_.push_back(spec.delta_p(u) * spec.lambda(u) +
                                  spec.delta(u) * spec.lambda_p(u));
    };

    double u = spec.u_min();
    push(u, y);
    for (int i = 0; i < nsteps; ++i) {
        FrameState k1 = rhs(spec, u, y);
        FrameState k2 = rhs(spec, u + h / 2, axpy(y, h / 2, k1));
        FrameState k3 = rhs(spec, u + h / 2, axpy(y, h / 2, k2));
        FrameState k4 = rhs(spec, u + h, axpy(y, h, k3));
        y = axpy(y, h / 6,
                 {k1.e + 2 * k2.e + 2 * k3.e + k4.e, k1.n + 2 * k2.n + 2 * k3.n + k4.n,
                  k1.z + 2 * k2.z + 2 * k3.z + k4.z, k1.s + 2 * k2.s + 2 * k3.s + k4.s});
        path.max_drift_ = std::max(path.max_drift_, orthonormality_drift(y));
        gram_schmidt(y);
        ++path.reorth_count_;
        u = spec.u_min() + (i + 1) * h;
        push(u, y);
    }
    return path;
}

FrameSample FramePath::at(double u) const {
    // small extrapolation margin so finite-difference stencils centered on the
    // interval ends stay usable; the end panels extrapolate polynomially
    const double margin = 0.01 * (u_max_ - u_min_);
    if (u < u_min_ - margin || u > u_max_ + margin)
        throw std::domain_error("frame query outside integrated interval");
    size_t i = std::min(samples_.size() - 2,
                        static_cast<size_t>(std::max(0.0, (u - u_min_) / h_)));
    const double t = (u - (u_min_ + i * h_)) / h_;

    const FrameSample& a = samples_[i];
    const FrameSample& b = samples_[i + 1];
    // Hermite slopes from the frame ODE at the two knots
    auto slopes = [&](const FrameSample& f, size_t j) -> FrameSample {
        double k = kappa_at_[j];
        return {f.n, -f.e + k * f.z, -k * f.n, dlam_at_[j] * f.e + delta_at_[j] * f.z};
    };
    // second derivatives by differentiating the ODE right-hand side:
    // e'' = -e + kappa z, n'' = -(1 + kappa^2) n + kappa' z,
    // z'' = kappa e - kappa' n - kappa^2 z,
    // s'' = (delta lambda)' e + (delta lambda - delta kappa) n + delta' z
    auto curvatures = [&](const FrameSample& f, size_t j) -> FrameSample {
        double k = kappa_at_[j], kp = kappa_p_at_[j];
        return {-1.0 * f.e + k * f.z, -(1 + k * k) * f.n + kp * f.z,
                k * f.e - kp * f.n - k * k * f.z,
                dlam_p_at_[j] * f.e + (dlam_at_[j] - delta_at_[j] * k) * f.n +
                    delta_p_at_[j] * f.z};
    };
    FrameSample da = slopes(a, i), db = slopes(b, i + 1);
    FrameSample ca = curvatures(a, i), cb = curvatures(b, i + 1);

    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double h01 = 10 * t3 - 15 * t4 + 6 * t5;
    const double h11 = -4 * t3 + 7 * t4 - 3 * t5;
    const double h21 = 0.5 * (t3 - 2 * t4 + t5);
    const double hh = h_, hh2 = h_ * h_;
    auto hermite = [&](const Vec3& p0, const Vec3& m0, const Vec3& a0, const Vec3& p1,
                       const Vec3& m1, const Vec3& a1) {
        return h00 * p0 + (h10 * hh) * m0 + (h20 * hh2) * a0 + h01 * p1 + (h11 * hh) * m1 +
               (h21 * hh2) * a1;
    };
    FrameSample out;
    out.e = hermite(a.e, da.e, ca.e, b.e, db.e, cb.e);
    out.n = hermite(a.n, da.n, ca.n, b.n, db.n, cb.n);
    out.z = hermite(a.z, da.z, ca.z, b.z, db.z, cb.z);
    out.s = hermite(a.s, da.s, ca.s, b.s, db.s, cb.s);
    return out;
}

SurfaceJet surface_jet(const RuledSurfaceSpec& spec, const FramePath& frames,
                       double u, double v) {
    FrameSample f = frames.at(u);
    double d = spec.delta(u);
    double dl = d * spec.lambda(u);
    double w = std::hypot(d, v);
    SurfaceJet jet;
    jet.x = f.s + v * f.e;
    jet.x1 = dl * f.e + v * f.n + d * f.z;
    jet.x2 = f.e;
    jet.xi = (d * f.n - v * f.z) / w;
    jet.w = w;
    return jet;
}

FundamentalForms fundamental_forms(const RuledSurfaceSpec& spec, double u, double v) {
    double d = spec.delta(u);
    double dp = spec.delta_p(u);
    double k = spec.kappa(u);
    double l = spec.lambda(u);
    double w = std::hypot(d, v);
    double w2 = d * d + v * v;
    FundamentalForms ff;
    ff.first = {w2 + d * d * l * l, d * l, 1.0};
    ff.second = {-(k * w2 + dp * v - d * d * l) / w, d / w, 0.0};
    return ff;
}

EuclideanCurvatures euclidean_curvatures(const RuledSurfaceSpec& spec, double u, double v) {
    double d = spec.delta(u);
    double dp = spec.delta_p(u);
    double k = spec.kappa(u);
    double l = spec.lambda(u);
    double w2 = d * d + v * v;
    double w = std::sqrt(w2);
    return {-d * d / (w2 * w2), -(k * w2 + dp * v + d * d * l) / (2 * w2 * w)};
}

} // namespace ruledkit
