#include "forcycle/cylinder_map.hpp"
#include "forcycle/diagram.hpp"
#include "forcycle/odesim.hpp"
#include "forcycle/scalar_family.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace forcycle;

namespace {

const MapParams kZ(2.0, 0.5, 0.5, 0.5625);   // one closed curve, two folds
const MapParams kY(1.5, 0.2, 0.5, 1.0);      // two closed curves, four folds
const ModelParams kForced(2.0, -0.5, 0.05, 0.5);

void BM_EvalG(benchmark::State& state) {
    CylinderPoint q(0.8, 1.0);
    for (auto _ : state) {
        const CylinderPoint im = eval_G_tau(kZ, 0.8, q);
        benchmark::DoNotOptimize(im.y);
        benchmark::DoNotOptimize(im.s);
    }
}
BENCHMARK(BM_EvalG);

void BM_Jacobian(benchmark::State& state) {
    const CylinderPoint q(0.8, 1.0);
    for (auto _ : state) {
        const Mat2 J = jacobian_G_tau(kZ, q);
        benchmark::DoNotOptimize(J.a11);
        benchmark::DoNotOptimize(J.a21);
    }
}
BENCHMARK(BM_Jacobian);

void BM_FindFolds(benchmark::State& state) {
    for (auto _ : state) {
        const auto folds = find_folds(kY);
        benchmark::DoNotOptimize(folds.size());
    }
}
BENCHMARK(BM_FindFolds);

void BM_TraceDiagram(benchmark::State& state) {
    const int n_tau = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const Diagram d = trace_diagram(kZ, n_tau);
        benchmark::DoNotOptimize(d.curves.size());
    }
    state.SetComplexityN(n_tau);
}
BENCHMARK(BM_TraceDiagram)->Arg(512)->Arg(2048)->Arg(8192)->Complexity();

void BM_IntegratePeriod(benchmark::State& state) {
    const State3 st0{0.6, 0.64, 0.48, 0.0};
    for (auto _ : state) {
        const Trajectory tr =
            integrate(kForced, st0, kForced.forcing_period(), 1e-10);
        benchmark::DoNotOptimize(tr.samples.back().x);
    }
}
BENCHMARK(BM_IntegratePeriod);

void BM_Stroboscopic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const State3 st0{0.6, 0.64, 0.48, 0.0};
    for (auto _ : state) {
        const State3 im = stroboscopic_map(kForced, st0, n);
        benchmark::DoNotOptimize(im.x);
    }
}
BENCHMARK(BM_Stroboscopic)->Arg(1)->Arg(4);

} // namespace

BENCHMARK_MAIN();
