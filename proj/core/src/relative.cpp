#include "ruledkit/relative.hpp"

#include <cmath>

#include "geom_detail.hpp"

namespace ruledkit {

SupportFunction SupportFunction::euclidean() {
    SupportFunction s;
    s.family_ = SupportFamily::euclidean;
    s.q_ = [](double, double) { return 1.0; };
    s.q1_ = [](double, double) { return 0.0; };
    s.q2_ = [](double, double) { return 0.0; };
    return s;
}

SupportFunction SupportFunction::manhart(const RuledSurfaceSpec& spec, double a) {
    SupportFunction s;
    s.family_ = SupportFamily::manhart;
    s.param_ = a;
    // q = |Ktilde|^a = (delta^2 / w^4)^a
    s.q_ = [&spec, a](double u, double v) {
        double d = spec.delta(u);
        double w2 = d * d + v * v;
        return std::pow(d * d / (w2 * w2), a);
    };
    s.q1_ = [&spec, a](double u, double v) {
        double d = spec.delta(u);
        double dp = spec.delta_p(u);
        double w2 = d * d + v * v;
        double base = d * d / (w2 * w2);
        // d/du ln base = 2 delta'/delta - 4 delta delta' / w^2
        double dlog = 2.0 * dp / d - 4.0 * d * dp / w2;
        return a * std::pow(base, a) * dlog;
    };
    s.q2_ = [&spec, a](double u, double v) {
        double d = spec.delta(u);
        double w2 = d * d + v * v;
        double base = d * d / (w2 * w2);
        double dlog = -4.0 * v / w2;
        return a * std::pow(base, a) * dlog;
    };
    return s;
}

SupportFunction SupportFunction::custom(Eval q, Eval q1, Eval q2) {
    SupportFunction s;
    s.family_ = SupportFamily::custom;
    s.q_ = std::move(q);
    s.q1_ = std::move(q1);
    s.q2_ = std::move(q2);
    return s;
}

SupportFunction SupportFunction::make(SupportFamily family, Eval q, Eval q1, Eval q2,
                                      double param) {
    SupportFunction s;
    s.family_ = family;
    s.param_ = param;
    s.q_ = std::move(q);
    s.q1_ = std::move(q1);
    s.q2_ = std::move(q2);
    return s;
}

double SupportFunction::q(double u, double v) const {
    double val = q_(u, v);
    if (std::abs(val) < q_min)
        throw SupportError("support function vanishes (|q| < q_min)");
    return val;
}

double SupportFunction::q1(double u, double v) const { return q1_(u, v); }
double SupportFunction::q2(double u, double v) const { return q2_(u, v); }

void SupportFunction::check_window(const RuledSurfaceSpec& spec, double v_lo, double v_hi,
                                   int nu, int nv) const {
    for (int i = 0; i <= nu; ++i) {
        double u = spec.u_min() + (spec.u_max() - spec.u_min()) * i / nu;
        for (int j = 0; j <= nv; ++j) {
            double v = v_lo + (v_hi - v_lo) * j / nv;
            if (std::abs(q_(u, v)) < q_min)
                throw SupportError("support function vanishes on evaluation window");
        }
    }
}

SupportFunction make_support(SupportFamily family, const RuledSurfaceSpec& spec, double param) {
    switch (family) {
        case SupportFamily::euclidean: return SupportFunction::euclidean();
        case SupportFamily::manhart: return SupportFunction::manhart(spec, param);
        default: throw SupportError("make_support: family requires its own constructor");
    }
}

FrameVec relative_normal_general(const RuledSurfaceSpec& spec, const SupportFunction& q,
                                 double u, double v) {
    double d = spec.delta(u);
    double dp = spec.delta_p(u);
    double k = spec.kappa(u);
    double w = spec.w(u, v);
    double w2 = w * w;
    double qv = q.q(u, v);
    double q1 = q.q1(u, v);
    double q2 = q.q2(u, v);
    FrameVec y;
    y.ce = -w * (d * q1 + q2 * (k * w2 + dp * v)) / (d * d);
    y.cn = (d * d * qv - w2 * v * q2) / (d * w);
    y.cz = -(v * qv + w2 * q2) / w;
    return y;
}

RelativeMetric relative_metric(const RuledSurfaceSpec& spec, const SupportFunction& q,
                               double u, double v) {
    double d = spec.delta(u);
    double dp = spec.delta_p(u);
    double k = spec.kappa(u);
    double l = spec.lambda(u);
    double w = spec.w(u, v);
    double w2 = w * w;
    double qv = q.q(u, v);
    FundamentalForms ff = fundamental_forms(spec, u, v);
    RelativeMetric m;
    m.G = {ff.second.a11 / qv, ff.second.a12 / qv, 0.0};
    m.Ginv = {0.0, w * qv / d, w * qv * (k * w2 + dp * v - d * d * l) / (d * d)};
    return m;
}

double VectorField2::partial(int comp, int wrt, double u, double v) const {
    const auto& exact = (comp == 1) ? (wrt == 1 ? dX1_du : dX1_dv)
                                    : (wrt == 1 ? dX2_du : dX2_dv);
    if (exact) return exact(u, v);
    const auto& f = (comp == 1) ? X1 : X2;
    double coord = (wrt == 1) ? u : v;
    double h = 1e-5 * (1.0 + std::abs(coord));
    if (wrt == 1) return (f(u + h, v) - f(u - h, v)) / (2 * h);
    return (f(u, v + h) - f(u, v - h)) / (2 * h);
}

FieldScalars field_calculus(const RuledSurfaceSpec& spec, const SupportFunction& q,
                            const VectorField2& X, double u, double v) {
    detail::GeomJet g = detail::geom_jet(spec, u, v);
    double X1 = X.X1(u, v), X2 = X.X2(u, v);
    double X1_1 = X.partial(1, 1, u, v), X1_2 = X.partial(1, 2, u, v);
    double X2_1 = X.partial(2, 1, u, v), X2_2 = X.partial(2, 2, u, v);

    FieldScalars out;
    // div^I X = ((w X^i)_/i)/w
    out.div_I = X1_1 + X2_2 + (g.w_1 * X1 + g.w_2 * X2) / g.w;
    // curl^I X = ((g12 X^1 + g22 X^2)_/1 - (g11 X^1 + g12 X^2)_/2)/w
    double A_1 = g.g12_1 * X1 + g.g12 * X1_1 + X2_1; // g22 = 1, g22_1 = 0
    double B_2 = g.g11_2 * X1 + g.g11 * X1_2 + g.g12 * X2_2; // g12_2 = 0
    out.curl_I = (A_1 - B_2) / g.w;

    // G-versions with the same template, area element a = sqrt|det G| = |delta|/(w |q|)
    double qv = q.q(u, v);
    double q1 = q.q1(u, v), q2 = q.q2(u, v);
    double a = std::abs(g.d) / (g.w * std::abs(qv));
    // d/du^i ln a = delta'/delta [i=1] - w_i/w - q_i/q
    double la_1 = g.dp / g.d - g.w_1 / g.w - q1 / qv;
    double la_2 = -g.w_2 / g.w - q2 / qv;
    out.div_G = X1_1 + X2_2 + la_1 * X1 + la_2 * X2;

    double G11 = g.h11 / qv, G12 = g.h12 / qv; // G22 = 0
    double G11_2 = (g.h11_2 * qv - g.h11 * q2) / (qv * qv);
    double G12_1 = (g.h12_1 * qv - g.h12 * q1) / (qv * qv);
    double G12_2 = (g.h12_2 * qv - g.h12 * q2) / (qv * qv);
    double AG_1 = G12_1 * X1 + G12 * X1_1; // G22 = 0
    double BG_2 = G11_2 * X1 + G11 * X1_2 + G12_2 * X2 + G12 * X2_2;
    out.curl_G = (AG_1 - BG_2) / a;
    return out;
}

GeneralFields general_fields(const RuledSurfaceSpec& spec, const SupportFunction& q,
                             double u, double v) {
    detail::GeomJet g = detail::geom_jet(spec, u, v);
    double qv = q.q(u, v);
    double q1 = q.q1(u, v), q2 = q.q2(u, v);

    GeneralFields out;
    double T1 = (g.w2 * q2 + v * qv) / (g.d * g.w);
    double T2 = (2 * g.d * g.w2 * q1 + g.dp * qv * (g.d * g.d - v * v)) / (2 * g.d * g.d * g.w) +
                T1 * (g.k * g.w2 + g.dp * v - g.d * g.d * g.l) / g.d;
    out.T = {T1, T2};

    // Q = (1/4) Ginv grad(1/q); (1/q)_/i = -q_/i / q^2
    RelativeMetric m = relative_metric(spec, q, u, v);
    double ip1 = -q1 / (qv * qv), ip2 = -q2 / (qv * qv);
    out.Q = {0.25 * (m.Ginv.a11 * ip1 + m.Ginv.a12 * ip2),
             0.25 * (m.Ginv.a12 * ip1 + m.Ginv.a22 * ip2)};
    return out;
}

VectorField2 general_tchebychev_field(const RuledSurfaceSpec& spec, const SupportFunction& q) {
    VectorField2 f;
    f.X1 = [&spec, &q](double u, double v) { return general_fields(spec, q, u, v).T.X1; };
    f.X2 = [&spec, &q](double u, double v) { return general_fields(spec, q, u, v).T.X2; };
    return f;
}

VectorField2 general_support_vector_field(const RuledSurfaceSpec& spec, const SupportFunction& q) {
    VectorField2 f;
    f.X1 = [&spec, &q](double u, double v) { return general_fields(spec, q, u, v).Q.X1; };
    f.X2 = [&spec, &q](double u, double v) { return general_fields(spec, q, u, v).Q.X2; };
    return f;
}

} // namespace ruledkit
