#include <benchmark/benchmark.h>

#include "proofread/montecarlo.hpp"

using namespace proofread;

static void BM_Philox(benchmark::State& state) {
    Philox4x32::Counter counter{0, 0, 0, 0};
    const Philox4x32::Key key{1, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(Philox4x32::generate(counter, key));
        ++counter[0];
    }
    state.SetItemsProcessed(state.iterations() * 4);
}
BENCHMARK(BM_Philox);

static void BM_SimulateTrial(benchmark::State& state) {
    std::uint64_t ligand = 0;
    const bool times = state.range(0) != 0;
    for (auto _ : state) {
        CounterRng rng(7, ligand++, 0);
        benchmark::DoNotOptimize(montecarlo::simulate_trial(1.5, 10, rng, times));
    }
}
BENCHMARK(BM_SimulateTrial)->Arg(0)->Arg(1);

static void BM_RunCampaign(benchmark::State& state) {
    montecarlo::SimConfig config{ModelParams::with_trials(1.5, 10, 16), 100'000, 3,
                                 static_cast<unsigned>(state.range(0)), {}, true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(montecarlo::run_campaign(config));
    }
    state.SetItemsProcessed(state.iterations() * 1'600'000);
}
BENCHMARK(BM_RunCampaign)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_ConditionedSampler(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            montecarlo::sample_conditioned_response_times(1.4, 40, 20.0, 10'000, 5));
    }
}
BENCHMARK(BM_ConditionedSampler)->Unit(benchmark::kMillisecond);
