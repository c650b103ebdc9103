#include <benchmark/benchmark.h>

#include <cmath>

#include "stratres/phase.hpp"
#include "stratres/picard.hpp"
#include "stratres/radial_ode.hpp"
#include "stratres/resistance.hpp"
#include "stratres/slope_law.hpp"
#include "stratres/solver.hpp"

namespace {

using namespace stratres;

void BM_MomentumFluxInverse(benchmark::State& state) {
    double y = 0.0;
    for (auto _ : state) {
        y += 3.1e-5;
        if (y > kPeakFlux) y = 0.0;
        benchmark::DoNotOptimize(flux_inverse(y));
    }
}
BENCHMARK(BM_MomentumFluxInverse);

void BM_OdeRhs(benchmark::State& state) {
    double p = 0.0;
    for (auto _ : state) {
        p += 1.7e-6;
        if (p > 0.5) p = 0.0;
        benchmark::DoNotOptimize(ode_rhs(1.0, p));
    }
}
BENCHMARK(BM_OdeRhs);

void BM_DesingularizedField(benchmark::State& state) {
    PhaseState s{0.9, 0.3, 0.0};
    for (auto _ : state) {
        s.theta += 1e-6;
        if (s.theta > 0.5) s.theta = 0.1;
        benchmark::DoNotOptimize(field_desingularized(s));
    }
}
BENCHMARK(BM_DesingularizedField);

void BM_ApplyT(benchmark::State& state) {
    PicardConfig cfg;
    const double R = cfg.resolved_R();
    auto zero = sample_shape([](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, R, 64);
    for (auto _ : state) benchmark::DoNotOptimize(apply_T(zero, cfg));
}
BENCHMARK(BM_ApplyT);

void BM_PicardSolve(benchmark::State& state) {
    PicardConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(picard_solve(cfg));
}
BENCHMARK(BM_PicardSolve);

void BM_SolveAxisDirect(benchmark::State& state) {
    SolveConfig cfg;
    cfg.method = SolveMethod::Direct;
    for (auto _ : state) benchmark::DoNotOptimize(solve_from_axis(cfg));
}
BENCHMARK(BM_SolveAxisDirect);

void BM_SolveAxisParametric(benchmark::State& state) {
    SolveConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(solve_from_axis(cfg));
}
BENCHMARK(BM_SolveAxisParametric);

void BM_OrbitClosure(benchmark::State& state) {
    const PhaseState start{kCriticalSlope + 1e-2, M_PI / 6.0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(integrate_orbit(start));
}
BENCHMARK(BM_OrbitClosure);

void BM_ResistanceRadial(benchmark::State& state) {
    const RadialProfile prof = solve_from_axis();
    const ResistanceDomain domain{0.0, prof.terminal->r_M};
    for (auto _ : state) benchmark::DoNotOptimize(resistance_radial(prof, domain));
}
BENCHMARK(BM_ResistanceRadial);

} // namespace

BENCHMARK_MAIN();
