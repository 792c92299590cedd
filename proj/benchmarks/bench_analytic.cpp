#include <benchmark/benchmark.h>

#include <cmath>

#include "proofread/analytic.hpp"
#include "proofread/general.hpp"
#include "proofread/speed.hpp"

using namespace proofread;

static void BM_ResponseProbMulti(benchmark::State& state) {
    double tau = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::response_prob_multi(tau, 80, 40.0));
        tau += 1e-9;
    }
}
BENCHMARK(BM_ResponseProbMulti);

static void BM_Log1mPow(benchmark::State& state) {
    double log_p = -50.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log1m_pow(log_p, 50.0));
        log_p += 1e-12;
    }
}
BENCHMARK(BM_Log1mPow);

static void BM_CriticalTauGeneral(benchmark::State& state) {
    const auto schedule = general::RateSchedule::uniform(static_cast<int>(state.range(0)), 1.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(general::critical_tau_general(schedule, 0.5 * state.range(0)));
    }
}
BENCHMARK(BM_CriticalTauGeneral)->Arg(20)->Arg(200)->Arg(2000);

static void BM_ConditionedTransform(benchmark::State& state) {
    const auto m = static_cast<std::int64_t>(std::exp(20.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(speed::response_time_laplace_multi({1e-9, 0.0}, 1.4, 40, m));
    }
}
BENCHMARK(BM_ConditionedTransform);
