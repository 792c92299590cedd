#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "proofread/analytic.hpp"
#include "proofread/energy.hpp"
#include "proofread/montecarlo.hpp"
#include "proofread/speed.hpp"

using namespace proofread;
using namespace proofread::montecarlo;

namespace {

SimConfig config(double tau, int n, std::int64_t m, std::uint64_t ligands, std::uint64_t seed,
                 unsigned workers = 0) {
    return SimConfig{ModelParams::with_trials(tau, n, m), ligands, seed, workers, {}, true};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double sup = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        sup = std::max(sup, std::abs(static_cast<double>(i) / a.size() -
                                     static_cast<double>(j) / b.size()));
    }
    return sup;
}

}  // namespace

TEST(SimulateTrial, LongBindingAlmostAlwaysResponds) {
    int hits = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        CounterRng rng(1, i, 0);
        hits += simulate_trial(1e12, 5, rng).responded ? 1 : 0;
    }
    EXPECT_GT(hits, 9990);
}

TEST(SimulateTrial, OutcomeInvariants) {
    for (std::uint64_t i = 0; i < 50'000; ++i) {
        CounterRng rng(2, i, 0);
        const auto outcome = simulate_trial(0.9, 4, rng);
        if (outcome.responded) EXPECT_EQ(outcome.atp_consumed, 4);
        else EXPECT_LT(outcome.atp_consumed, 4);
        EXPECT_GE(outcome.dwell_time, 0.0);
        EXPECT_TRUE(std::isfinite(outcome.dwell_time));
    }
}

// Responding dwell time sums N holding times, so its mean is N tau / (1 + tau).
TEST(SimulateTrial, RespondingDwellMeanIsErlangMean) {
    double sum = 0.0;
    double sum_sq = 0.0;
    int responses = 0;
    for (std::uint64_t i = 0; responses < 100'000; ++i) {
        CounterRng rng(3, i, 0);
        const auto outcome = simulate_trial(1.0, 10, rng);
        if (!outcome.responded) continue;
        ++responses;
        sum += outcome.dwell_time;
        sum_sq += outcome.dwell_time * outcome.dwell_time;
    }
    const double mean = sum / responses;
    const double se = std::sqrt((sum_sq / responses - mean * mean) / responses);
    EXPECT_NEAR(mean, speed::erlang_mean(1.0, 10), 3.0 * se);
    EXPECT_EQ(speed::erlang_mean(1.0, 10), 5.0);
}

TEST(SimulateTrial, ResponseIndicatorChiSquare) {
    // One chi-square statistic over a grid of Bernoulli cells.
    double statistic = 0.0;
    int cells = 0;
    std::uint64_t seed = 40;
    for (double tau : {0.5, 1.0, 3.0}) {
        for (int n : {1, 3, 8}) {
            const double p = analytic::response_prob_single(tau, n);
            const std::uint64_t trials = 40'000;
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < trials; ++i) {
                CounterRng rng(seed, i, 0);
                hits += simulate_trial(tau, n, rng, false).responded ? 1 : 0;
            }
            ++seed;
            const double expected_hits = p * trials;
            const double expected_miss = (1 - p) * trials;
            statistic += std::pow(hits - expected_hits, 2) / expected_hits +
                         std::pow((trials - hits) - expected_miss, 2) / expected_miss;
            ++cells;
        }
    }
    const boost::math::chi_squared dist(cells);
    EXPECT_LT(statistic, boost::math::quantile(dist, 0.99));
}

TEST(RunCampaign, DeterministicAcrossWorkerCounts) {
    const auto one = run_campaign(config(1.4, 5, 6, 30'000, 77, 1));
    const auto four = run_campaign(config(1.4, 5, 6, 30'000, 77, 4));
    const auto sixteen = run_campaign(config(1.4, 5, 6, 30'000, 77, 16));
    EXPECT_TRUE(one == four);
    EXPECT_TRUE(one == sixteen);
    EXPECT_FALSE(one == run_campaign(config(1.4, 5, 6, 30'000, 78, 4)));
}

TEST(RunCampaign, HistogramTotalsAndInterval) {
    const auto summary = run_campaign(config(0.8, 3, 4, 20'000, 5));
    std::uint64_t atp = 0;
    std::uint64_t counts = 0;
    for (auto c : summary.atp_histogram) atp += c;
    for (auto c : summary.response_count_histogram) counts += c;
    EXPECT_EQ(summary.atp_histogram.size(), 13u);
    EXPECT_EQ(summary.response_count_histogram.size(), 5u);
    EXPECT_EQ(atp, 20'000u);
    EXPECT_EQ(counts, 20'000u);
    EXPECT_EQ(summary.conditional_time_samples.size(), summary.responders);
    EXPECT_GE(summary.interval.low, 0.0);
    EXPECT_LE(summary.interval.high, 1.0);
    EXPECT_LE(summary.interval.low, summary.response_rate);
    EXPECT_GE(summary.interval.high, summary.response_rate);
}

TEST(RunCampaign, HandValueWithinWilsonInterval) {
    const auto summary = run_campaign(config(1.0, 1, 2, 1'000'000, 6));
    EXPECT_LE(summary.interval.low, 0.75);
    EXPECT_GE(summary.interval.high, 0.75);
}

TEST(RunCampaign, SingleTrialAtpHistograms) {
    const std::pair<double, int> points[] = {{0.5, 3}, {2.0, 6}, {5.0, 12}};
    std::uint64_t seed = 60;
    for (const auto& [tau, n] : points) {
        SimConfig c = config(tau, n, 1, 1'000'000, seed++);
        c.sample_times = false;
        const auto summary = run_campaign(c);
        EXPECT_LT(total_variation(energy::atp_pmf_single(tau, n), summary.atp_histogram), 0.005);
    }
}

TEST(RunCampaign, CapacityCap) {
    EXPECT_THROW(run_campaign(config(1.0, 2, 1000, 2'000'000, 1)), CapacityError);
}

TEST(WilsonInterval, KnownValues) {
    const auto w = wilson_interval(50, 100);
    EXPECT_NEAR(w.center, 0.5, 1e-15);
    EXPECT_NEAR(w.high - w.low, 2 * 1.959963984540054 * w.std_error, 1e-14);
    EXPECT_NEAR(w.low, 0.4038, 1e-4);
    const auto zero = wilson_interval(0, 10);
    EXPECT_EQ(zero.low, 0.0);
    EXPECT_GT(zero.high, 0.0);
}

// The aggregated sampler must reproduce the per-trial simulation.
TEST(ConditionedSampler, MatchesFullSimulation) {
    const double tau = 1.2;
    const int n = 8;
    const std::int64_t m = 16;
    const auto summary = run_campaign(config(tau, n, m, 200'000, 9));
    const auto sampled = sample_conditioned_response_times(
        tau, n, std::log(static_cast<double>(m)), summary.conditional_time_samples.size(), 10);
    const double na = static_cast<double>(sampled.size());
    const double critical = 1.95 * std::sqrt(2.0 / na);  // 0.1% two-sample level
    EXPECT_LT(ks_two_sample(sampled, summary.conditional_time_samples), critical);
}

// log M = 14 puts most ligands past 1e5 failed trials, so this exercises the
// normal approximation of the summed state counts.
TEST(ConditionedSampler, MeanMatchesTransform) {
    const int n = 20;
    const double log_m = 14.0;
    const auto m = static_cast<std::int64_t>(std::floor(std::exp(log_m)));
    const double tau = analytic::critical_tau(n, std::log(static_cast<double>(m)));
    const auto times =
        sample_conditioned_response_times(tau, n, std::log(static_cast<double>(m)), 20'000, 3);
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    const double se = std::sqrt(var / (times.size() - 1.0) / times.size());
    EXPECT_NEAR(mean, speed::conditional_mean_response_time(tau, n, m), 3.0 * se);
}
