#include "ruledkit/job.hpp"

#include <charconv>
#include <memory>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ruledkit {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

JobConfig JobConfig::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    JobConfig c;
    try {
        const auto& s = j.at("surface");
        c.delta_src = s.at("delta").get<std::string>();
        c.kappa_src = s.at("kappa").get<std::string>();
        c.lambda_src = s.at("lambda").get<std::string>();
        c.u_min = s.at("domain").at(0).get<double>();
        c.u_max = s.at("domain").at(1).get<double>();
        if (s.contains("u0")) c.u0 = s.at("u0").get<double>();

        const auto& n = j.at("normalization");
        std::string family = n.at("family").get<std::string>();
        if (family == "euclidean") {
            c.family = NormalizationFamily::euclidean;
        } else if (family == "manhart") {
            c.family = NormalizationFamily::manhart;
            c.manhart_a = n.at("a").get<double>();
        } else if (family == "polar") {
            c.family = NormalizationFamily::polar;
            c.polar_f_src = n.at("f").get<std::string>();
        } else if (family == "special") {
            c.family = NormalizationFamily::special;
            c.special_c1 = n.at("c1").get<double>();
            c.special_c2 = n.at("c2").get<double>();
        } else {
            throw ConfigError("unknown normalization family '" + family + "'");
        }

        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            if (g.contains("u_count")) c.u_count = g.at("u_count").get<int>();
            if (g.contains("v_range")) {
                c.v_lo = g.at("v_range").at(0).get<double>();
                c.v_hi = g.at("v_range").at(1).get<double>();
            }
            if (g.contains("v_count")) c.v_count = g.at("v_count").get<int>();
        }
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            if (o.contains("csv")) c.csv_path = o.at("csv").get<std::string>();
            if (o.contains("obj")) c.obj_path = o.at("obj").get<std::string>();
            if (o.contains("report")) c.report_path = o.at("report").get<std::string>();
        }
        if (j.contains("tolerances") && j.at("tolerances").contains("scale"))
            c.tol_scale = j.at("tolerances").at("scale").get<double>();
        if (j.contains("perturb")) {
            const auto& p = j.at("perturb");
            if (p.contains("J")) c.perturb_J = p.at("J").get<double>();
            if (p.contains("K")) c.perturb_K = p.at("K").get<double>();
            if (p.contains("H")) c.perturb_H = p.at("H").get<double>();
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }

    if (c.u_count < 2 || c.v_count < 2) throw ConfigError("grid counts must be >= 2");
    if (!std::isfinite(c.v_lo) || !std::isfinite(c.v_hi) || !(c.v_lo < c.v_hi))
        throw ConfigError("v-range must be a finite nonempty interval");
    if (!(c.u_min < c.u_max)) throw ConfigError("surface domain must be a nonempty interval");

    // expressions must parse up front
    try {
        (void)ScalarExpr::parse(c.delta_src);
        (void)ScalarExpr::parse(c.kappa_src);
        (void)ScalarExpr::parse(c.lambda_src);
        if (c.family == NormalizationFamily::polar)
            (void)ScalarExpr::parse(c.polar_f_src, "V");
    } catch (const ExprParseError& e) {
        throw ConfigError(std::string("expression parse error: ") + e.what());
    }
    return c;
}

JobConfig JobConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

namespace {

struct JobContext {
    RuledSurfaceSpec spec;
    FramePath frames;
    std::optional<PolarSupport> polar; // set for euclidean/polar/special
    std::optional<SupportFunction> manhart;

    std::optional<SupportFunction> generic;

    const SupportFunction& support() {
        if (manhart) return *manhart;
        if (!generic) generic = polar->as_support();
        return *generic;
    }
};

// heap-allocated: PolarSupport keeps a pointer into the spec member
std::unique_ptr<JobContext> make_context(const JobConfig& c) {
    RuledSurfaceSpec spec(ScalarExpr::parse(c.delta_src), ScalarExpr::parse(c.kappa_src),
                          ScalarExpr::parse(c.lambda_src), c.u_min, c.u_max);
    if (c.u0) spec.set_u0(*c.u0);
    FramePath frames = integrate_frame(spec);
    auto ctx_ptr = std::make_unique<JobContext>(JobContext{
        std::move(spec), std::move(frames), std::nullopt, std::nullopt, std::nullopt});
    JobContext& ctx = *ctx_ptr;
    switch (c.family) {
        case NormalizationFamily::euclidean:
            ctx.polar.emplace(ctx.spec, ScalarExpr::constant(1.0));
            break;
        case NormalizationFamily::polar:
            ctx.polar.emplace(ctx.spec, ScalarExpr::parse(c.polar_f_src, "V"));
            break;
        case NormalizationFamily::special: {
            ScalarExpr V = ScalarExpr::variable();
            ctx.polar.emplace(ctx.spec, ScalarExpr::constant(c.special_c1) * cos(V) +
                                            ScalarExpr::constant(c.special_c2) * sin(V));
            break;
        }
        case NormalizationFamily::manhart:
            ctx.manhart = SupportFunction::manhart(ctx.spec, c.manhart_a);
            break;
    }
    return ctx_ptr;
}

constexpr const char* kCsvHeader =
    "u,v,V,q,Ktilde,Htilde,K,H,J,S,T1,T2,Q1,Q2,divI_T,curlI_T,divG_T,divI_Q,curlI_Q,divG_Q";

struct RowValues {
    double V, q, Kt, Ht, K, H, J, S, T1, T2, Q1, Q2;
    double divI_T, curlI_T, divG_T, divI_Q, curlI_Q, divG_Q;
};

RowValues eval_point(JobContext& ctx, double u, double v) {
    RowValues r{};
    r.V = polar_V(ctx.spec, u, v);
    EuclideanCurvatures ec = euclidean_curvatures(ctx.spec, u, v);
    r.Kt = ec.K;
    r.Ht = ec.H;
    if (ctx.polar) {
        const PolarSupport& ps = *ctx.polar;
        r.q = ps.q(u, v);
        PolarShape shape = polar_shape_and_curvatures(ctx.spec, ps, u, v);
        r.K = shape.K;
        r.H = shape.H;
        PickScalars pick = polar_pick_scalar(ctx.spec, ps, u, v);
        r.J = pick.J;
        r.S = pick.S;
        TchebychevResult T = polar_tchebychev(ctx.spec, ps, u, v);
        r.T1 = T.T1;
        r.T2 = T.T2;
        r.divI_T = T.div_I;
        r.curlI_T = T.curl_I;
        r.divG_T = T.div_G;
        SupportVectorResult Q = polar_support_vector(ctx.spec, ps, u, v);
        r.Q1 = Q.Q1;
        r.Q2 = Q.Q2;
        r.divI_Q = Q.div_I;
        r.curlI_Q = Q.curl_I;
        r.divG_Q = Q.div_G;
    } else {
        // non-polar support: closed polar forms do not apply, fall back to
        // the general machinery and the numeric oracles
        const SupportFunction& sf = ctx.support();
        r.q = sf.q(u, v);
        oracle::ShapeFit fit = oracle::numeric_shape_operator(ctx.spec, ctx.frames, sf, u, v);
        r.K = fit.B.det();
        r.H = fit.B.trace() / 2;
        r.J = oracle::darboux_pick(ctx.spec, ctx.frames, sf, u, v).J;
        r.S = oracle::numeric_scalar_curvature(ctx.spec, sf, u, v);
        GeneralFields gf = general_fields(ctx.spec, sf, u, v);
        r.T1 = gf.T.X1;
        r.T2 = gf.T.X2;
        r.Q1 = gf.Q.X1;
        r.Q2 = gf.Q.X2;
        FieldScalars fsT =
            field_calculus(ctx.spec, sf, general_tchebychev_field(ctx.spec, sf), u, v);
        FieldScalars fsQ =
            field_calculus(ctx.spec, sf, general_support_vector_field(ctx.spec, sf), u, v);
        r.divI_T = fsT.div_I;
        r.curlI_T = fsT.curl_I;
        r.divG_T = fsT.div_G;
        r.divI_Q = fsQ.div_I;
        r.curlI_Q = fsQ.curl_I;
        r.divG_Q = fsQ.div_G;
    }
    return r;
}

double nudged_v(JobContext& ctx, double u, double v, double dv, int* nudged) {
    const SupportFunction& sf = ctx.support();
    if (std::abs(sf.q_raw(u, v)) >= SupportFunction::q_min) return v;
    ++*nudged;
    double vn = v + 0.5 * dv;
    if (std::abs(sf.q_raw(u, vn)) >= SupportFunction::q_min) return vn;
    return v - 0.5 * dv;
}

} // namespace

EvalOutputs run_eval(const JobConfig& config) {
    auto ctx_ptr = make_context(config);
    JobContext& ctx = *ctx_ptr;
    EvalOutputs out;
    std::ostringstream csv, obj;
    csv << kCsvHeader << "\n";

    const double du = (config.u_max - config.u_min) / (config.u_count - 1);
    const double dv = (config.v_hi - config.v_lo) / (config.v_count - 1);
    for (int iu = 0; iu < config.u_count; ++iu) {
        double u = config.u_min + iu * du;
        for (int iv = 0; iv < config.v_count; ++iv) {
            double v0 = config.v_lo + iv * dv;
            double v = nudged_v(ctx, u, v0, dv, &out.nudged_points);
            try {
                RowValues r = eval_point(ctx, u, v);
                const double cols[] = {u, v, r.V, r.q, r.Kt, r.Ht, r.K, r.H, r.J, r.S,
                                       r.T1, r.T2, r.Q1, r.Q2, r.divI_T, r.curlI_T,
                                       r.divG_T, r.divI_Q, r.curlI_Q, r.divG_Q};
                for (size_t i = 0; i < std::size(cols); ++i)
                    csv << (i ? "," : "") << format_double(cols[i]);
                csv << "\n";
                Vec3 x = surface_jet(ctx.spec, ctx.frames, u, v).x;
                obj << "v " << format_double(x.x) << ' ' << format_double(x.y) << ' '
                    << format_double(x.z) << "\n";
            } catch (const std::exception& e) {
                std::ostringstream msg;
                msg << "evaluation failed at (u=" << u << ", v=" << v << "): " << e.what();
                throw EvalError(msg.str());
            }
        }
    }
    for (int iu = 0; iu + 1 < config.u_count; ++iu)
        for (int iv = 0; iv + 1 < config.v_count; ++iv) {
            int a = iu * config.v_count + iv + 1;
            int b = (iu + 1) * config.v_count + iv + 1;
            obj << "f " << a << ' ' << b << ' ' << b + 1 << ' ' << a + 1 << "\n";
        }
    out.csv = csv.str();
    out.obj = obj.str();
    return out;
}

namespace {

ordered_json classification_json(const Classification& c) {
    ordered_json p;
    p["right_helicoid"] = c.right_helicoid;
    p["K_zero"] = c.K_zero;
    p["H_zero"] = c.H_zero;
    p["J_zero"] = c.J_zero;
    p["Q_incompressible_I"] = c.Q_incompressible_I;
    p["grid_n"] = c.grid_n;
    p["tolerance"] = c.tolerance;
    return p;
}

} // namespace

VerifyOutputs run_verify(const JobConfig& config) {
    auto ctx_ptr = make_context(config);
    JobContext& ctx = *ctx_ptr;
    if (!ctx.polar)
        throw ConfigError("verify requires a polar-representable normalization "
                          "(euclidean, polar, or special)");
    oracle::ReportOptions opt;
    opt.u_count = config.u_count;
    opt.v_count = config.v_count;
    opt.v_lo = config.v_lo;
    opt.v_hi = config.v_hi;
    opt.tol_scale = config.tol_scale;
    opt.perturb_J = config.perturb_J;
    opt.perturb_K = config.perturb_K;
    opt.perturb_H = config.perturb_H;
    oracle::ResidualReport rep = oracle::residual_report(ctx.spec, ctx.frames, *ctx.polar, opt);

    ordered_json j;
    j["summary"] = {{"passed", rep.passed},
                    {"failed", rep.failed},
                    {"inconclusive", rep.inconclusive},
                    {"all_passed", rep.all_passed()}};
    j["predicates"] = classification_json(
        classify(ctx.spec, *ctx.polar, config.v_lo, config.v_hi));
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.rows) {
        ordered_json row;
        row["u"] = r.u;
        row["v"] = r.v;
        row["quantity"] = r.quantity;
        row["closed"] = r.closed_value;
        row["oracle"] = r.oracle_value;
        row["abs_residual"] = r.abs_residual;
        row["rel_residual"] = r.rel_residual;
        row["tolerance"] = r.tolerance;
        row["status"] = (r.status == oracle::RowStatus::Pass)         ? "pass"
                        : (r.status == oracle::RowStatus::Fail)       ? "fail"
                                                                      : "inconclusive";
        if (!r.note.empty()) row["note"] = r.note;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);

    VerifyOutputs out;
    out.report_json = j.dump(2) + "\n";
    out.all_passed = rep.all_passed();
    out.passed = rep.passed;
    out.failed = rep.failed;
    out.inconclusive = rep.inconclusive;
    return out;
}

std::string run_classify(const JobConfig& config) {
    auto ctx_ptr = make_context(config);
    JobContext& ctx = *ctx_ptr;
    if (!ctx.polar)
        throw ConfigError("classify requires a polar-representable normalization");
    ordered_json j = classification_json(
        classify(ctx.spec, *ctx.polar, config.v_lo, config.v_hi));
    return j.dump(2) + "\n";
}

} // namespace ruledkit
