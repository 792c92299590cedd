#include "proofread/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "proofread/numerics.hpp"

namespace proofread::montecarlo {

namespace {

constexpr std::uint64_t kExactFailureSumLimit = 100'000;

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

struct Accumulator {
    std::uint64_t responders = 0;
    std::vector<std::uint64_t> atp_histogram;
    std::vector<std::uint64_t> response_count_histogram;
};

struct BlockTimes {
    std::vector<double> samples;
};

template <class StepFn>
TrialOutcome run_chain(int n_steps, CounterRng& rng, bool sample_time, StepFn&& step) {
    TrialOutcome outcome;
    for (int k = 0; k < n_steps; ++k) {
        const auto [advance_prob, holding_rate] = step(k);
        if (sample_time) {
            std::exponential_distribution<double> holding(holding_rate);
            outcome.dwell_time += holding(rng);
        }
        if (rng.uniform_open() >= advance_prob) {
            return outcome;
        }
        ++outcome.atp_consumed;
    }
    outcome.responded = true;
    return outcome;
}

}  // namespace

TrialOutcome simulate_trial(double tau, int n_steps, CounterRng& rng, bool sample_time) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    require(n_steps >= 1, "n_steps must be >= 1");
    const double advance = tau / (1.0 + tau);
    const double rate = (1.0 + tau) / tau;
    return run_chain(n_steps, rng, sample_time,
                     [&](int) { return std::pair{advance, rate}; });
}

TrialOutcome simulate_general_trial(double tau, const general::RateSchedule& schedule,
                                    CounterRng& rng, bool sample_time) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    schedule.validate();
    return run_chain(schedule.n_steps(), rng, sample_time, [&](int k) {
        const double bt = schedule.b[static_cast<std::size_t>(k)] * tau;
        return std::pair{bt / (1.0 + bt), (1.0 + bt) / bt};
    });
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
    require(n > 0, "wilson_interval: n must be positive");
    require(successes <= n, "wilson_interval: successes exceed n");
    require(std::isfinite(z) && z > 0.0, "wilson_interval: z must be positive");
    const double nd = static_cast<double>(n);
    const double p_hat = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (p_hat + z2 / (2.0 * nd)) / denom;
    const double spread =
        std::sqrt(p_hat * (1.0 - p_hat) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {center, std::max(0.0, center - z * spread), std::min(1.0, center + z * spread),
            spread};
}

SimSummary run_campaign(const SimConfig& config) {
    require(config.n_ligands >= 1, "run_campaign: n_ligands must be >= 1");
    const ModelParams& params = config.params;
    const std::int64_t trials = params.integer_trials();
    require(trials >= 1, "run_campaign: trials must be >= 1");
    if (trials > static_cast<std::int64_t>(std::numeric_limits<std::uint32_t>::max()) ||
        config.n_ligands > kMaxTotalTrials / static_cast<std::uint64_t>(trials)) {
        std::ostringstream os;
        os << "run_campaign: " << config.n_ligands << " ligands x " << trials
           << " trials exceeds the cap of " << kMaxTotalTrials;
        throw CapacityError(os.str());
    }
    if (config.schedule) {
        config.schedule->validate();
        require(config.schedule->n_steps() == params.n_steps(),
                "run_campaign: schedule length must equal n_steps");
    }

    const int n_steps = params.n_steps();
    const double tau = params.tau();
    const auto atp_bins = static_cast<std::size_t>(trials) * static_cast<std::size_t>(n_steps) + 1;
    const auto count_bins = static_cast<std::size_t>(trials) + 1;
    const std::uint64_t n_blocks = (config.n_ligands + kLigandsPerBlock - 1) / kLigandsPerBlock;

    unsigned workers = config.workers == 0 ? std::thread::hardware_concurrency() : config.workers;
    workers = std::max(1u, workers);
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_blocks));

    std::vector<Accumulator> accumulators(workers);
    std::vector<BlockTimes> block_times(config.sample_times ? n_blocks : 0);
    std::atomic<std::uint64_t> next_block{0};

    auto worker = [&](unsigned index) {
        Accumulator& acc = accumulators[index];
        acc.atp_histogram.assign(atp_bins, 0);
        acc.response_count_histogram.assign(count_bins, 0);
        for (;;) {
            const std::uint64_t block = next_block.fetch_add(1);
            if (block >= n_blocks) break;
            const std::uint64_t begin = block * kLigandsPerBlock;
            const std::uint64_t end = std::min(config.n_ligands, begin + kLigandsPerBlock);
            std::vector<double>* times =
                config.sample_times ? &block_times[block].samples : nullptr;
            for (std::uint64_t ligand = begin; ligand < end; ++ligand) {
                std::int64_t atp = 0;
                std::int64_t responses = 0;
                double elapsed = 0.0;
                for (std::int64_t t = 0; t < trials; ++t) {
                    CounterRng rng(config.seed, ligand, static_cast<std::uint32_t>(t));
                    const TrialOutcome outcome =
                        config.schedule
                            ? simulate_general_trial(tau, *config.schedule, rng,
                                                     config.sample_times)
                            : simulate_trial(tau, n_steps, rng, config.sample_times);
                    atp += outcome.atp_consumed;
                    if (responses == 0) {
                        elapsed += outcome.dwell_time;
                    }
                    if (outcome.responded) {
                        if (responses == 0 && times != nullptr) {
                            times->push_back(elapsed);
                        }
                        ++responses;
                    }
                }
                ++acc.atp_histogram[static_cast<std::size_t>(atp)];
                ++acc.response_count_histogram[static_cast<std::size_t>(responses)];
                if (responses > 0) ++acc.responders;
            }
        }
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) {
            threads.emplace_back(worker, i);
        }
        for (auto& thread : threads) thread.join();
    }

    SimSummary summary;
    summary.n_ligands = config.n_ligands;
    summary.trials = trials;
    summary.atp_histogram.assign(atp_bins, 0);
    summary.response_count_histogram.assign(count_bins, 0);
    for (const auto& acc : accumulators) {
        summary.responders += acc.responders;
        for (std::size_t i = 0; i < atp_bins; ++i) {
            summary.atp_histogram[i] += acc.atp_histogram[i];
        }
        for (std::size_t i = 0; i < count_bins; ++i) {
            summary.response_count_histogram[i] += acc.response_count_histogram[i];
        }
    }
    for (auto& block : block_times) {
        summary.conditional_time_samples.insert(summary.conditional_time_samples.end(),
                                                block.samples.begin(), block.samples.end());
    }
    summary.response_rate =
        static_cast<double>(summary.responders) / static_cast<double>(summary.n_ligands);
    summary.interval = wilson_interval(summary.responders, summary.n_ligands);
    return summary;
}

std::vector<double> sample_conditioned_response_times(double tau, int n_steps, double log_trials,
                                                      std::uint64_t count, std::uint64_t seed) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    require(n_steps >= 1, "n_steps must be >= 1");
    const std::int64_t trials = integer_from_log(log_trials);
    const double m = static_cast<double>(trials);

    const double log_q = log_advance_probability(tau);
    const double log_p = n_steps * log_q;
    const double log1m_p = std::log1p(-std::exp(log_p));
    const double p_m = log1m_pow(log_p, std::log(m));
    const double fail_mass = -std::expm1(log_p);  // 1 - q^N
    const double scale = tau / (1.0 + tau);

    // Moments of the number of states visited by a failing trial, on 1..N.
    numerics::CompensatedSum<double> mean_sum;
    numerics::CompensatedSum<double> second_sum;
    for (int k = 1; k <= n_steps; ++k) {
        const double w = std::exp((k - 1) * log_q) * (1.0 - std::exp(log_q)) / fail_mass;
        mean_sum += w * k;
        second_sum += w * k * k;
    }
    const double k_mean = mean_sum.value();
    const double k_var = std::max(0.0, second_sum.value() - k_mean * k_mean);

    std::vector<double> samples;
    samples.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        CounterRng rng(seed, i, 0);
        // Failures before the first response, truncated to at most M - 1.
        const double u = rng.uniform_open();
        double j_real = 0.0;
        if (log1m_p < 0.0) {
            j_real = std::ceil(std::log1p(-u * p_m) / log1m_p) - 1.0;
        }
        const auto failures =
            static_cast<std::uint64_t>(std::clamp(j_real, 0.0, m - 1.0));

        double holding_count = n_steps;
        if (failures <= kExactFailureSumLimit) {
            for (std::uint64_t f = 0; f < failures; ++f) {
                const double v = rng.uniform_open();
                const double k_real = std::ceil(std::log1p(-v * fail_mass) / log_q);
                holding_count += std::clamp(k_real, 1.0, static_cast<double>(n_steps));
            }
        } else {
            const double fd = static_cast<double>(failures);
            std::normal_distribution<double> normal(fd * k_mean, std::sqrt(fd * k_var));
            holding_count += std::max(fd, std::round(normal(rng)));
        }
        std::gamma_distribution<double> gamma(holding_count, scale);
        samples.push_back(gamma(rng));
    }
    return samples;
}

}  // namespace proofread::montecarlo
