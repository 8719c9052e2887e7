#include <benchmark/benchmark.h>

#include "tsbreak/breaks.hpp"
#include "tsbreak/joint.hpp"
#include "tsbreak/regularized.hpp"
#include "tsbreak/synth.hpp"

namespace {

tsbreak::TimeSeries seasonal_break_series(int T, std::uint64_t seed) {
    tsbreak::GeneratorSpec spec;
    spec.T = T;
    const int split = 2 * T / 3;
    spec.trend_pieces = {{1, split, 0.004, 0.0},
                         {split + 1, T, -0.012, 0.016 * split}};
    spec.seasonal = tsbreak::SeasonalSpec{12, 4.0, 0.0, {}};
    spec.sigma = 0.2;
    spec.seed = seed;
    return tsbreak::gen_series(spec);
}

void BM_BuildSsrTable(benchmark::State& state) {
    const int T = static_cast<int>(state.range(0));
    const auto y = seasonal_break_series(T, 1);
    for (auto _ : state) {
        tsbreak::SsrTable table(y, 2);
        benchmark::DoNotOptimize(table.at(1, T));
    }
    state.SetComplexityN(T);
}
BENCHMARK(BM_BuildSsrTable)->RangeMultiplier(2)->Range(250, 2000)->Complexity();

void BM_DpBreaks(benchmark::State& state) {
    const int T = static_cast<int>(state.range(0));
    const auto y = seasonal_break_series(T, 2);
    const tsbreak::SsrTable table(y, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tsbreak::dp_optimal_breaks(table, 3));
    }
}
BENCHMARK(BM_DpBreaks)->Arg(250)->Arg(500)->Arg(1000);

void BM_SearchPeriod(benchmark::State& state) {
    const int T = static_cast<int>(state.range(0));
    const auto y = seasonal_break_series(T, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tsbreak::search_period(y, 0.1, 24));
    }
}
BENCHMARK(BM_SearchPeriod)->Arg(120)->Arg(240)->Arg(480);

void BM_IterativeDetect(benchmark::State& state) {
    const auto y = seasonal_break_series(static_cast<int>(state.range(0)), 4);
    tsbreak::JointConfig config;
    config.lambda = 0.1;
    config.p_max = 24;
    config.m_max = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tsbreak::iterative_detect(y, config));
    }
}
BENCHMARK(BM_IterativeDetect)->Arg(120)->Arg(336);

} // namespace

BENCHMARK_MAIN();
