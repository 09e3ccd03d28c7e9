#include "ruledkit/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace ruledkit {
namespace oracle {

namespace {

template <typename T, typename F>
T central_diff(const F& f, double u, double v, int wrt, double h) {
    if (wrt == 1) return (f(u + h, v) - f(u - h, v)) / (2 * h);
    return (f(u, v + h) - f(u, v - h)) / (2 * h);
}

template <typename T, typename F>
T central_diff2(const F& f, double u, double v, int wrt, double h) {
    if (wrt == 1) return (f(u + h, v) - 2.0 * f(u, v) + f(u - h, v)) / (h * h);
    return (f(u, v + h) - 2.0 * f(u, v) + f(u, v - h)) / (h * h);
}

template <typename T, typename F>
T richardson_partial(const F& f, double u, double v, int wrt, int order) {
    double coord = (wrt == 1) ? u : v;
    if (order == 1) {
        double h = 1e-4 * (1.0 + std::abs(coord));
        T d1 = central_diff<T>(f, u, v, wrt, h);
        T d2 = central_diff<T>(f, u, v, wrt, h / 2);
        return (4.0 * d2 - d1) / 3.0;
    }
    double h = 1e-3 * (1.0 + std::abs(coord));
    T d1 = central_diff2<T>(f, u, v, wrt, h);
    T d2 = central_diff2<T>(f, u, v, wrt, h / 2);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

double fd_partial(const std::function<double(double, double)>& f, double u, double v,
                  int wrt, int order) {
    return richardson_partial<double>(f, u, v, wrt, order);
}

Vec3 fd_partial_vec(const std::function<Vec3(double, double)>& f, double u, double v,
                    int wrt, int order) {
    return richardson_partial<Vec3>(f, u, v, wrt, order);
}

Vec3 fd_mixed_vec(const std::function<Vec3(double, double)>& f, double u, double v) {
    double hu = 1e-4 * (1.0 + std::abs(u));
    double hv = 1e-4 * (1.0 + std::abs(v));
    return (f(u + hu, v + hv) - f(u + hu, v - hv) - f(u - hu, v + hv) + f(u - hu, v - hv)) /
           (4 * hu * hv);
}

ShapeFit numeric_shape_operator(const RuledSurfaceSpec& spec, const FramePath& frames,
                                const SupportFunction& q, double u, double v) {
    auto y_map = [&](double uu, double vv) {
        FrameVec y = relative_normal_general(spec, q, uu, vv);
        return y.ambient(frames.at(uu));
    };
    Vec3 y1 = fd_partial_vec(y_map, u, v, 1);
    Vec3 y2 = fd_partial_vec(y_map, u, v, 2);
    SurfaceJet jet = surface_jet(spec, frames, u, v);

    double g11 = dot(jet.x1, jet.x1), g12 = dot(jet.x1, jet.x2), g22 = dot(jet.x2, jet.x2);
    double det = g11 * g22 - g12 * g12;

    ShapeFit fit;
    const Vec3 yi[2] = {y1, y2};
    // normalize by the overall scale of the y-derivatives: individual rows may
    // vanish identically (the relative image can degenerate to a curve, or even
    // to a stationary point of that curve, where both derivatives are zero and
    // the tangency statement holds trivially); the tangent norms provide a
    // surface-scale floor so such points do not divide noise by noise
    double scale = std::max({norm(y1), norm(y2), norm(jet.x1), norm(jet.x2)});
    double Bc[2][2];
    for (int i = 0; i < 2; ++i) {
        double b1 = dot(yi[i], jet.x1), b2 = dot(yi[i], jet.x2);
        // y_/i = -B_i^j x_/j  =>  B_i = -Gram^{-1} b
        Bc[i][0] = -(g22 * b1 - g12 * b2) / det;
        Bc[i][1] = -(-g12 * b1 + g11 * b2) / det;
        Vec3 r = yi[i] + Bc[i][0] * jet.x1 + Bc[i][1] * jet.x2;
        fit.residual = std::max(fit.residual, norm(r) / scale);
    }
    fit.B = {Bc[0][0], Bc[0][1], Bc[1][0], Bc[1][1]};
    fit.normal_det = triple(jet.x1, jet.x2, y_map(u, v));
    return fit;
}

namespace {

struct Mat2Full {
    double m[2][2];
};

Mat2Full invert(const SymTensor2& G) {
    double det = G.det();
    return {{{G.a22 / det, -G.a12 / det}, {-G.a12 / det, G.a11 / det}}};
}

// steps near a zero of q must shrink with |q|: the metric G = h/q and the
// tensors built from it have derivatives growing like powers of 1/q
double q_step_scale(const SupportFunction& q, double u, double v) {
    return std::clamp(std::abs(q.q_raw(u, v)), 1e-3, 1.0);
}

// Christoffel symbols of the relative metric by finite differences
void christoffel(const RuledSurfaceSpec& spec, const SupportFunction& q, double u, double v,
                 double Gam[2][2][2], double step_scale = 1.0) {
    auto Gc = [&](double uu, double vv) { return relative_metric(spec, q, uu, vv).G; };
    SymTensor2 G = Gc(u, v);
    Mat2Full Gi = invert(G);
    SymTensor2 dG[2];
    for (int i = 0; i < 2; ++i) {
        auto comp = [&](auto pick) {
            auto f = [&](double uu, double vv) { return pick(Gc(uu, vv)); };
            double coord = (i == 0) ? u : v;
            double h = 1e-4 * (1.0 + std::abs(coord)) * step_scale;
            double d1 = central_diff<double>(f, u, v, i + 1, h);
            double d2 = central_diff<double>(f, u, v, i + 1, h / 2);
            return (4.0 * d2 - d1) / 3.0;
        };
        dG[i].a11 = comp([](const SymTensor2& t) { return t.a11; });
        dG[i].a12 = comp([](const SymTensor2& t) { return t.a12; });
        dG[i].a22 = comp([](const SymTensor2& t) { return t.a22; });
    }
    auto at = [](const SymTensor2& t, int i, int j) {
        return (i == 0 && j == 0) ? t.a11 : (i == 1 && j == 1) ? t.a22 : t.a12;
    };
    for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0.0;
                for (int l = 0; l < 2; ++l)
                    s += Gi.m[m][l] * (at(dG[i], l, j) + at(dG[j], l, i) - at(dG[l], i, j));
                Gam[m][i][j] = 0.5 * s;
            }
}

} // namespace

DarbouxResult darboux_pick(const RuledSurfaceSpec& spec, const FramePath& frames,
                           const SupportFunction& q, double u, double v) {
    const double ss = q_step_scale(q, u, v);
    // covariant derivative of x_/i, as a vector-valued (0,2)-tensor field
    auto cov = [&](double uu, double vv, Vec3 T[2][2]) {
        double Gam[2][2][2];
        christoffel(spec, q, uu, vv, Gam, ss);
        SurfaceJet jet = surface_jet(spec, frames, uu, vv);
        // second partials of x = s + v e from the frame equations
        // e' = n, n' = -e + kappa z, z' = -kappa n, s' = delta lambda e + delta z
        FrameSample fs = frames.at(uu);
        double d = spec.delta(uu), dp = spec.delta_p(uu);
        double kk = spec.kappa(uu), ll = spec.lambda(uu), lp = spec.lambda_p(uu);
        Vec3 xij[2][2];
        xij[0][0] = (dp * ll + d * lp - vv) * fs.e + (d * ll - d * kk) * fs.n +
                    (dp + kk * vv) * fs.z;
        xij[0][1] = fs.n;
        xij[1][0] = xij[0][1];
        xij[1][1] = {0, 0, 0};
        const Vec3 xm[2] = {jet.x1, jet.x2};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                T[i][j] = xij[i][j] - Gam[0][i][j] * xm[0] - Gam[1][i][j] * xm[1];
    };

    // partials of T_ij by an outer central difference, Richardson extrapolated
    Vec3 T0[2][2], Tp[2][2][2], Tm[2][2][2], Tp2[2][2][2], Tm2[2][2][2];
    cov(u, v, T0);
    const double hu = 1e-3 * (1.0 + std::abs(u)) * ss;
    const double hv = 1e-3 * (1.0 + std::abs(v)) * ss;
    cov(u + hu, v, Tp[0]);
    cov(u - hu, v, Tm[0]);
    cov(u, v + hv, Tp[1]);
    cov(u, v - hv, Tm[1]);
    cov(u + hu / 2, v, Tp2[0]);
    cov(u - hu / 2, v, Tm2[0]);
    cov(u, v + hv / 2, Tp2[1]);
    cov(u, v - hv / 2, Tm2[1]);

    double Gam[2][2][2];
    christoffel(spec, q, u, v, Gam, ss);
    SurfaceJet jet = surface_jet(spec, frames, u, v);
    double qv = q.q(u, v);

    DarbouxResult out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double h = (k == 0) ? hu : hv;
                Vec3 d1 = (Tp[k][i][j] - Tm[k][i][j]) / (2 * h);
                Vec3 d2 = (Tp2[k][i][j] - Tm2[k][i][j]) / h;
                Vec3 ct = (4.0 * d2 - d1) / 3.0;
                for (int m = 0; m < 2; ++m) {
                    ct -= Gam[m][k][i] * ((m == 0) ? ((j == 0) ? T0[0][0] : T0[0][1])
                                                   : ((j == 0) ? T0[1][0] : T0[1][1]));
                    ct -= Gam[m][k][j] * ((m == 0) ? ((i == 0) ? T0[0][0] : T0[1][0])
                                                   : ((i == 0) ? T0[0][1] : T0[1][1]));
                }
                out.A[i][j][k] = dot(jet.xi, ct) / qv;
            }

    // total symmetry check
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                out.max_asymmetry = std::max(out.max_asymmetry,
                                             std::abs(out.A[i][j][k] - out.A[j][i][k]));
                out.max_asymmetry = std::max(out.max_asymmetry,
                                             std::abs(out.A[i][j][k] - out.A[i][k][j]));
            }

    SymTensor2 G = relative_metric(spec, q, u, v).G;
    Mat2Full Gi = invert(G);
    double J = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double up = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            up += Gi.m[i][a] * Gi.m[j][b] * Gi.m[k][c] * out.A[a][b][c];
                J += out.A[i][j][k] * up;
            }
    out.J = 0.5 * J;
    return out;
}

double numeric_scalar_curvature(const RuledSurfaceSpec& spec, const SupportFunction& q,
                                double u, double v) {
    const double ss = q_step_scale(q, u, v);
    auto Gam_at = [&](double uu, double vv) {
        struct Packed { double g[2][2][2]; } p;
        christoffel(spec, q, uu, vv, p.g, ss);
        return p;
    };
    auto G0 = relative_metric(spec, q, u, v).G;
    auto Gam = Gam_at(u, v);
    const double hu = 1e-3 * (1.0 + std::abs(u)) * ss;
    const double hv = 1e-3 * (1.0 + std::abs(v)) * ss;
    auto Gpu = Gam_at(u + hu, v), Gmu = Gam_at(u - hu, v);
    auto Gpv = Gam_at(u, v + hv), Gmv = Gam_at(u, v - hv);
    auto dGam = [&](int wrt, int m, int i, int j) {
        if (wrt == 0) return (Gpu.g[m][i][j] - Gmu.g[m][i][j]) / (2 * hu);
        return (Gpv.g[m][i][j] - Gmv.g[m][i][j]) / (2 * hv);
    };
    // R^m_{1 2 1 2}: R^m_{ijk} = d_j Gam^m_{ik} - d_k Gam^m_{ij} + sums
    auto Rmijk = [&](int m, int i, int j, int k) {
        double s = dGam(j, m, i, k) - dGam(k, m, i, j);
        for (int l = 0; l < 2; ++l)
            s += Gam.g[m][j][l] * Gam.g[l][i][k] - Gam.g[m][k][l] * Gam.g[l][i][j];
        return s;
    };
    // R_1212 = G_{1m} R^m_{2 1 2}
    double R1212 = G0.a11 * Rmijk(0, 1, 0, 1) + G0.a12 * Rmijk(1, 1, 0, 1);
    return R1212 / G0.det();
}

FrenetResult frenet_invariants(const std::function<Vec3(double)>& curve, double u, double h) {
    Vec3 f[7];
    for (int i = -3; i <= 3; ++i) f[i + 3] = curve(u + i * h);
    // 4th-order central differences for all three derivatives
    Vec3 d1 = (-1.0 * f[5] + 8.0 * f[4] - 8.0 * f[2] + f[1]) / (12 * h);
    Vec3 d2 = (-1.0 * f[5] + 16.0 * f[4] - 30.0 * f[3] + 16.0 * f[2] - f[1]) / (12 * h * h);
    Vec3 d3 = (-1.0 * (f[6] - f[0]) + 8.0 * (f[5] - f[1]) - 13.0 * (f[4] - f[2])) /
              (8 * h * h * h);

    double speed = norm(d1);
    Vec3 c = cross(d1, d2);
    double cn = norm(c);
    if (speed < 1e-8 || cn < 1e-8)
        throw std::domain_error("Frenet invariants undefined (irregular or inflection point)");
    return {cn / (speed * speed * speed), dot(c, d3) / (cn * cn)};
}

void ResidualReport::add(ResidualRow row) {
    switch (row.status) {
        case RowStatus::Pass: ++passed; break;
        case RowStatus::Fail: ++failed; break;
        case RowStatus::Inconclusive: ++inconclusive; break;
    }
    rows.push_back(std::move(row));
}

ResidualReport residual_report(const RuledSurfaceSpec& spec, const FramePath& frames,
                               const PolarSupport& ps, const ReportOptions& opt) {
    ResidualReport rep;
    SupportFunction sf = ps.as_support();

    auto add_cmp = [&](double u, double v, const std::string& name, double closed,
                       double oracle_val, double tol, const std::string& note = "") {
        ResidualRow row;
        row.u = u;
        row.v = v;
        row.quantity = name;
        row.closed_value = closed;
        row.oracle_value = oracle_val;
        row.abs_residual = std::abs(closed - oracle_val);
        row.rel_residual = row.abs_residual / (1.0 + std::abs(closed));
        row.tolerance = tol * opt.tol_scale;
        row.status = (row.rel_residual <= row.tolerance) ? RowStatus::Pass : RowStatus::Fail;
        row.note = note;
        rep.add(row);
    };
    auto add_fail = [&](double u, double v, const std::string& name, const std::string& why) {
        ResidualRow row;
        row.u = u;
        row.v = v;
        row.quantity = name;
        row.status = RowStatus::Fail;
        row.note = why;
        rep.add(row);
    };
    auto add_inconclusive = [&](double u, double v, const std::string& name) {
        ResidualRow row;
        row.u = u;
        row.v = v;
        row.quantity = name;
        row.status = RowStatus::Inconclusive;
        row.note = "|q| < 10*q_min";
        rep.add(row);
    };

    static const char* kQuantities[] = {"K", "H", "J", "S", "3H-J-3S", "curlG_T",
                                        "curlG_Q", "gradtau_T", "gradinvq_Q",
                                        "shape_fit", "normal_det"};

    for (int iu = 0; iu < opt.u_count; ++iu) {
        double u = spec.u_min() +
                   (spec.u_max() - spec.u_min()) * (iu + 0.5) / opt.u_count;
        for (int iv = 0; iv < opt.v_count; ++iv) {
            double v = opt.v_lo + (opt.v_hi - opt.v_lo) * (iv + 0.5) / opt.v_count;
            double qraw = ps.q_raw(u, v);
            if (std::abs(qraw) < 10 * SupportFunction::q_min) {
                for (const char* name : kQuantities) add_inconclusive(u, v, name);
                continue;
            }
            try {
                PolarShape shape = polar_shape_and_curvatures(spec, ps, u, v);
                PickScalars pick = polar_pick_scalar(spec, ps, u, v);
                TchebychevResult T = polar_tchebychev(spec, ps, u, v);
                SupportVectorResult Q = polar_support_vector(spec, ps, u, v);

                double Kc = shape.K * opt.perturb_K;
                double Hc = shape.H * opt.perturb_H;
                double Jc = pick.J * opt.perturb_J;

                ShapeFit fit = numeric_shape_operator(spec, frames, sf, u, v);
                add_cmp(u, v, "K", Kc, fit.B.det(), 1e-5);
                add_cmp(u, v, "H", Hc, fit.B.trace() / 2, 1e-5);

                DarbouxResult dar = darboux_pick(spec, frames, sf, u, v);
                add_cmp(u, v, "J", Jc, dar.J, 1e-4);

                double Sn = numeric_scalar_curvature(spec, sf, u, v);
                add_cmp(u, v, "S", pick.S, Sn, 5e-3);

                // structural identity, closed forms only
                {
                    double res = 3 * Hc - Jc - 3 * pick.S;
                    ResidualRow row;
                    row.u = u;
                    row.v = v;
                    row.quantity = "3H-J-3S";
                    row.closed_value = res;
                    row.abs_residual = std::abs(res);
                    row.tolerance = 1e-8 * (1.0 + std::abs(Jc)) * opt.tol_scale;
                    row.rel_residual = row.abs_residual / (1.0 + std::abs(Jc));
                    row.status =
                        (row.abs_residual <= row.tolerance) ? RowStatus::Pass : RowStatus::Fail;
                    rep.add(row);
                }

                // G-rotations by the generic operator (not the printed zeros)
                FieldScalars fsT =
                    field_calculus(spec, sf, polar_tchebychev_field(spec, ps), u, v);
                FieldScalars fsQ =
                    field_calculus(spec, sf, polar_support_vector_field(spec, ps), u, v);
                add_cmp(u, v, "curlG_T", 0.0, fsT.curl_G, 1e-6);
                add_cmp(u, v, "curlG_Q", 0.0, fsQ.curl_G, 1e-6);

                // potential gradients
                RelativeMetric m = relative_metric(spec, sf, u, v);
                auto tau = [&](double uu, double vv) {
                    return std::log(std::abs(spec.w(uu, vv) * ps.q(uu, vv)) /
                                    std::sqrt(std::abs(spec.delta(uu))));
                };
                double t1 = fd_partial(tau, u, v, 1);
                double t2 = fd_partial(tau, u, v, 2);
                double gT1 = m.Ginv.a11 * t1 + m.Ginv.a12 * t2;
                double gT2 = m.Ginv.a12 * t1 + m.Ginv.a22 * t2;
                double grad_res = std::max(std::abs(gT1 - T.T1), std::abs(gT2 - T.T2)) /
                                  (1.0 + std::hypot(T.T1, T.T2));
                add_cmp(u, v, "gradtau_T", 0.0, grad_res, 1e-6);

                auto invq = [&](double uu, double vv) { return 1.0 / ps.q(uu, vv); };
                double p1 = fd_partial(invq, u, v, 1);
                double p2 = fd_partial(invq, u, v, 2);
                double gQ1 = 0.25 * (m.Ginv.a11 * p1 + m.Ginv.a12 * p2);
                double gQ2 = 0.25 * (m.Ginv.a12 * p1 + m.Ginv.a22 * p2);
                double grad_resQ = std::max(std::abs(gQ1 - Q.Q1), std::abs(gQ2 - Q.Q2)) /
                                   (1.0 + std::hypot(Q.Q1, Q.Q2));
                add_cmp(u, v, "gradinvq_Q", 0.0, grad_resQ, 1e-6);

                add_cmp(u, v, "shape_fit", 0.0, fit.residual, 1e-6);

                // transversality: det[x_/1, x_/2, y] bounded away from zero
                {
                    FrameVec y = relative_normal_general(spec, sf, u, v);
                    double scale = spec.w(u, v) * (1.0 + y.norm());
                    ResidualRow row;
                    row.u = u;
                    row.v = v;
                    row.quantity = "normal_det";
                    row.closed_value = fit.normal_det;
                    row.tolerance = 1e-8 * scale;
                    row.abs_residual = std::abs(fit.normal_det);
                    row.status = (std::abs(fit.normal_det) >= row.tolerance)
                                     ? RowStatus::Pass
                                     : RowStatus::Fail;
                    rep.add(row);
                }
            } catch (const std::exception& e) {
                add_fail(u, v, "evaluation", e.what());
            }
        }
    }
    return rep;
}

} // namespace oracle
} // namespace ruledkit
