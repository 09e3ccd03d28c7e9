#include "ruledkit/antiderivative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ruledkit {
namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const ScalarExpr& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f.eval(c);
    double result_k = kWgk[7] * fc;
    double result_g = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f.eval(c - x);
        const double f2 = f.eval(c + x);
        result_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
    }
    return {result_k * h, std::abs((result_k - result_g) * h)};
}

void refine(const ScalarExpr& f, double a, double b, double tol,
            std::vector<std::pair<double, double>>& panels, int depth) {
    PanelResult r = gk15(f, a, b);
    if (r.error <= tol * (b - a) || depth > 40) {
        panels.emplace_back(b, r.integral);
        return;
    }
    const double m = 0.5 * (a + b);
    refine(f, a, m, tol, panels, depth + 1);
    refine(f, m, b, tol, panels, depth + 1);
}

} // namespace

Antiderivative::Antiderivative(ScalarExpr integrand, double u0, double lo, double hi)
    : integrand_(std::move(integrand)), u0_(u0), lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw QuadratureError("empty integration domain");
    if (u0 < lo || u0 > hi) throw QuadratureError("base point outside domain");

    const double tol = 1e-12 / std::max(1.0, hi - lo);
    std::vector<std::pair<double, double>> panels;
    // seed with a handful of panels so oscillatory integrands are sampled
    const int seed = 16;
    for (int i = 0; i < seed; ++i) {
        double a = lo + (hi - lo) * i / seed;
        double b = lo + (hi - lo) * (i + 1) / seed;
        refine(integrand_, a, b, tol, panels, 0);
    }

    knots_.reserve(panels.size() + 1);
    cumulative_.reserve(panels.size() + 1);
    knots_.push_back(lo);
    cumulative_.push_back(0.0);
    double acc = 0.0;
    for (const auto& [b, val] : panels) {
        acc += val;
        knots_.push_back(b);
        cumulative_.push_back(acc);
    }
    cum_at_u0_ = (*this)(u0_) + cum_at_u0_; // operator() subtracts cum_at_u0_, still 0 here
}

double Antiderivative::operator()(double u) const {
    // small extrapolation margin so finite-difference stencils centered on the
    // interval ends stay usable; the overhang is integrated directly
    const double margin = 0.01 * (hi_ - lo_);
    if (u < lo_ - margin || u > hi_ + margin)
        throw std::domain_error("antiderivative query outside declared domain");
    const double uc = std::clamp(u, lo_, hi_);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), uc);
    size_t idx = (it == knots_.begin()) ? 0 : (it - knots_.begin() - 1);
    if (idx >= knots_.size() - 1) idx = knots_.size() - 2;
    double base = cumulative_[idx];
    // gk15 with reversed limits yields the signed integral, so queries in the
    // margin below lo land on the first knot with a negative partial panel
    double partial = (u != knots_[idx]) ? gk15(integrand_, knots_[idx], u).integral : 0.0;
    return base + partial - cum_at_u0_;
}

} // namespace ruledkit
