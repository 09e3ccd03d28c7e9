#include <benchmark/benchmark.h>

#include "ruledkit/oracle.hpp"

using namespace ruledkit;

namespace {

RuledSurfaceSpec make_spec() {
    return {ScalarExpr::parse("2+sin(u)"), ScalarExpr::parse("cos(u)"),
            ScalarExpr::parse("u/5"), 0.0, 6.5};
}

void bm_frame_integration(benchmark::State& state) {
    RuledSurfaceSpec spec = make_spec();
    for (auto _ : state) {
        FramePath path = integrate_frame(spec);
        benchmark::DoNotOptimize(path.max_orthonormality_drift());
    }
}
BENCHMARK(bm_frame_integration)->Unit(benchmark::kMillisecond);

void bm_closed_form_sweep(benchmark::State& state) {
    RuledSurfaceSpec spec = make_spec();
    PolarSupport ps(spec, ScalarExpr::parse("2+sin(V)", "V"));
    for (auto _ : state) {
        double acc = 0;
        for (int iu = 0; iu < 32; ++iu)
            for (int iv = 0; iv < 32; ++iv) {
                double u = 0.1 + 6.3 * iu / 32.0;
                double v = -3.0 + 6.0 * iv / 32.0;
                acc += polar_pick_scalar(spec, ps, u, v).J;
                acc += polar_tchebychev(spec, ps, u, v).div_G;
            }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * 32 * 32);
}
BENCHMARK(bm_closed_form_sweep)->Unit(benchmark::kMillisecond);

void bm_oracle_point(benchmark::State& state) {
    RuledSurfaceSpec spec = make_spec();
    FramePath path = integrate_frame(spec);
    PolarSupport ps(spec, ScalarExpr::parse("2+sin(V)", "V"));
    SupportFunction sf = ps.as_support();
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::darboux_pick(spec, path, sf, 2.3, 0.8).J);
    }
}
BENCHMARK(bm_oracle_point)->Unit(benchmark::kMicrosecond);

void bm_expr_eval(benchmark::State& state) {
    ScalarExpr f = ScalarExpr::parse("exp(sin(u))*cos(2*u)+u^3/7");
    double u = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.eval(u));
        u += 1e-6;
    }
}
BENCHMARK(bm_expr_eval);

} // namespace

BENCHMARK_MAIN();
