#pragma once

#include <vector>

#include "ruledkit/expr.hpp"

namespace ruledkit {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// F(u) = integral of the integrand from u0 to u, F(u0) = 0.
// Panels are refined adaptively at construction until the Gauss-Kronrod
// error estimate is below 1e-12 per unit length; cumulative values are
// cached at the panel knots and a query integrates the partial panel.
// Absolute error on [lo, hi] stays below 1e-10. Immutable after build.
class Antiderivative {
public:
    Antiderivative(ScalarExpr integrand, double u0, double lo, double hi);

    double operator()(double u) const; // throws std::domain_error outside [lo, hi]

    double base_point() const { return u0_; }
    const ScalarExpr& integrand() const { return integrand_; }

private:
    ScalarExpr integrand_;
    double u0_, lo_, hi_;
    std::vector<double> knots_;      // ascending, knots_.front() == lo, back() == hi
    std::vector<double> cumulative_; // integral from lo to knots_[i]
    double cum_at_u0_ = 0.0;
};

} // namespace ruledkit
