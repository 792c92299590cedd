#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "proofread/core.hpp"
#include "proofread/general.hpp"
#include "proofread/rng.hpp"

namespace proofread::montecarlo {

/// Upper bound on n_ligands * trials for one campaign.
inline constexpr std::uint64_t kMaxTotalTrials = 1'000'000'000ULL;
/// Ligands per work unit. Fixed so that results do not depend on the number
/// of workers.
inline constexpr std::uint64_t kLigandsPerBlock = 4096;

/// One trial of the chain: at each occupied state a holding time with rate
/// (1 + tau) / tau, then advance with probability tau / (1 + tau) or detach.
/// With sample_time false the holding times are skipped and dwell_time is 0.
TrialOutcome simulate_trial(double tau, int n_steps, CounterRng& rng, bool sample_time = true);

/// Same chain with per-state advance probability b_k tau / (1 + b_k tau) and
/// holding rate (1 + b_k tau) / (b_k tau).
TrialOutcome simulate_general_trial(double tau, const general::RateSchedule& schedule,
                                    CounterRng& rng, bool sample_time = true);

struct SimConfig {
    ModelParams params;
    std::uint64_t n_ligands = 1;
    std::uint64_t seed = 0;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 1;
    std::optional<general::RateSchedule> schedule;
    bool sample_times = true;
};

struct WilsonInterval {
    double center;
    double low;
    double high;
    /// Half-width divided by z.
    double std_error;

    bool operator==(const WilsonInterval&) const = default;
};

struct SimSummary {
    std::uint64_t n_ligands = 0;
    std::int64_t trials = 0;
    /// Ligands with at least one response among their M trials.
    std::uint64_t responders = 0;
    double response_rate = 0.0;
    WilsonInterval interval{};
    /// Total ATP per ligand over its M trials, bins 0..M N.
    std::vector<std::uint64_t> atp_histogram;
    /// Responses per ligand, bins 0..M.
    std::vector<std::uint64_t> response_count_histogram;
    /// For each responding ligand, the dwell time summed over its trials up
    /// to and including the first response. Ordered by ligand index.
    std::vector<double> conditional_time_samples;

    bool operator==(const SimSummary&) const = default;
};

/// Wilson score interval for a binomial proportion; z defaults to 95%.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n,
                               double z = 1.959963984540054);

/// Simulates n_ligands ligands with M = params.integer_trials() trials each.
/// Throws CapacityError when n_ligands * M exceeds kMaxTotalTrials.
SimSummary run_campaign(const SimConfig& config);

/// Draws `count` response times of ligands conditioned on responding within M
/// trials, without simulating each trial: the number of failed trials is a
/// truncated geometric, their state counts are summed exactly (or by a normal
/// approximation beyond 1e5 failures), and the time is Gamma given the total
/// number of holding times. Suitable for M far beyond simulation reach.
std::vector<double> sample_conditioned_response_times(double tau, int n_steps, double log_trials,
                                                      std::uint64_t count, std::uint64_t seed);

}  // namespace proofread::montecarlo
