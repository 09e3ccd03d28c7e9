#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ruledkit/polar.hpp"
#include "ruledkit/special.hpp"

namespace ruledkit {
namespace oracle {

// Richardson-extrapolated central differences over (u, v).
// Order 1 stencil h = 1e-4*(1+|coordinate|), order 2 h = 1e-3.
double fd_partial(const std::function<double(double, double)>& f, double u, double v,
                  int wrt, int order = 1);
Vec3 fd_partial_vec(const std::function<Vec3(double, double)>& f, double u, double v,
                    int wrt, int order = 1);
Vec3 fd_mixed_vec(const std::function<Vec3(double, double)>& f, double u, double v);

struct ShapeFit {
    Mat2 B;
    double residual = 0.0; // least-squares misfit, normalized by ||y_/i||
    double normal_det = 0.0; // det[x_/1, x_/2, y], the transversality determinant
};

// solves y_/i = -B_i^j x_/j with finite-difference y_/i; the fit residual
// checks the tangency condition
ShapeFit numeric_shape_operator(const RuledSurfaceSpec& spec, const FramePath& frames,
                                const SupportFunction& q, double u, double v);

struct DarbouxResult {
    double A[2][2][2]; // covariant Darboux tensor A_ijk
    double J = 0.0;    // (1/2) A_ijk A^ijk
    double max_asymmetry = 0.0; // worst deviation from total symmetry
};

DarbouxResult darboux_pick(const RuledSurfaceSpec& spec, const FramePath& frames,
                           const SupportFunction& q, double u, double v);

// scalar curvature of the relative metric, R_1212 / det G, by numerically
// differentiated Christoffel symbols
double numeric_scalar_curvature(const RuledSurfaceSpec& spec, const SupportFunction& q,
                                double u, double v);

struct FrenetResult {
    double curvature = 0.0;
    double torsion = 0.0;
};

// non-unit-speed Frenet invariants by finite differences of the curve map.
// The default step is chosen wider than the dense-output panel of FramePath
// (1e-3 of the interval) so third-derivative probes average over the small
// C^2 interpolation wiggle instead of resolving it.
FrenetResult frenet_invariants(const std::function<Vec3(double)>& curve, double u,
                               double h = 1e-2);

enum class RowStatus { Pass, Fail, Inconclusive };

struct ResidualRow {
    double u = 0.0, v = 0.0;
    std::string quantity;
    double closed_value = 0.0;
    double oracle_value = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double tolerance = 0.0;
    RowStatus status = RowStatus::Pass;
    std::string note;
};

struct ResidualReport {
    std::vector<ResidualRow> rows;
    int passed = 0, failed = 0, inconclusive = 0;

    bool all_passed() const { return failed == 0; }
    void add(ResidualRow row);
};

struct ReportOptions {
    int u_count = 10;
    int v_count = 10;
    double v_lo = -3.0, v_hi = 3.0;
    double tol_scale = 1.0;
    double perturb_J = 1.0; // multiplies the closed-form J (negative control)
    double perturb_K = 1.0;
    double perturb_H = 1.0;
};

// one row per (grid point x quantity); evaluation errors become failed rows
ResidualReport residual_report(const RuledSurfaceSpec& spec, const FramePath& frames,
                               const PolarSupport& ps, const ReportOptions& opt = {});

} // namespace oracle
} // namespace ruledkit
