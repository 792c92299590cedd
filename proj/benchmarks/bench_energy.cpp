#include <benchmark/benchmark.h>

#include "proofread/energy.hpp"

using namespace proofread;

static void BM_AtpPmfMulti(benchmark::State& state) {
    const auto trials = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy::atp_pmf_multi(2.0, 12, trials));
    }
    state.SetComplexityN(trials);
}
BENCHMARK(BM_AtpPmfMulti)->RangeMultiplier(4)->Range(4, 256)->Complexity();

static void BM_AtpLimitMulti(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy::atp_limit_multi(1.0, state.range(0)));
    }
}
BENCHMARK(BM_AtpLimitMulti)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
