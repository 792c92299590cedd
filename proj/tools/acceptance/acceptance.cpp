#include "acceptance.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <utility>

#include "oracles.hpp"
#include "proofread/proofread.hpp"

namespace proofread::acceptance {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

montecarlo::SimConfig sim_config(const ModelParams& params, std::uint64_t ligands,
                                 const SuiteOptions& options, std::uint64_t stream,
                                 bool sample_times) {
    return montecarlo::SimConfig{params, ligands, options.seed ^ (stream * 0x9E3779B97F4A7C15ULL),
                                 options.workers, std::nullopt, sample_times};
}

Outcome response_probability_oracle(const SuiteOptions& options) {
    const auto start = Clock::now();
    const double taus[] = {0.25, 0.5, 1, 2, 4, 8};
    const int steps[] = {1, 2, 5, 10, 20};
    int good = 0;
    int cells = 0;
    double worst = 0.0;
    for (double tau : taus) {
        for (int n : steps) {
            const auto summary = montecarlo::run_campaign(
                sim_config(ModelParams(tau, n), 1'000'000, options, 100 + cells, false));
            const double exact = analytic::response_prob_single(tau, n);
            const double z = std::abs(summary.interval.center - exact) / summary.interval.std_error;
            worst = std::max(worst, z);
            if (z <= 4.0) ++good;
            ++cells;
        }
    }
    const double elapsed = seconds_since(start);
    return {good >= 29 && elapsed < 60.0,
            fmt::format("{}/{} cells within 4 SE (worst {:.2f} SE), {:.1f} s", good, cells, worst,
                        elapsed)};
}

Outcome critical_time_residual(const SuiteOptions& options) {
    std::mt19937_64 gen(options.seed);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int n = std::uniform_int_distribution<int>(2, 200)(gen);
        const double log_m = std::uniform_real_distribution<double>(0.1, 3.0 * n)(gen);
        const double log_l = std::uniform_real_distribution<double>(0.0, n)(gen);
        const double tau_c = analytic::critical_tau(n, log_m, log_l);
        worst = std::max(worst, std::abs(oracles::critical_residual_mp(tau_c, n, log_m + log_l)));
    }
    return {worst < 1e-9, fmt::format("max |M L p(tau_c) - 1| = {:.3e} over 50 points", worst)};
}

double specificity_sup(int n, double b) {
    double sup = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double xi = -4.0 + 0.01 * i;
        const double finite = analytic::finite_response_curve(xi, n, b * n);
        const double limit = analytic::limit_response_curve(xi, regime::LogMOrderN{b});
        sup = std::max(sup, std::abs(finite - limit));
    }
    return sup;
}

Outcome specificity_limit(const SuiteOptions&) {
    const int steps[] = {20, 40, 80, 160};
    std::vector<double> sups;
    for (int n : steps) sups.push_back(specificity_sup(n, 0.5));
    bool decreasing = true;
    for (std::size_t i = 1; i < sups.size(); ++i) decreasing &= sups[i] < sups[i - 1];
    return {decreasing && sups.back() < 0.02,
            fmt::format("sup at N=20,40,80,160: {:.6f} {:.6f} {:.6f} {:.6f}", sups[0], sups[1],
                        sups[2], sups[3])};
}

Outcome sensitivity(const SuiteOptions&) {
    const int n = 200;
    const double b = 0.5;
    std::vector<double> values;
    for (double log_l : {0.0, 20.0, 40.0}) {
        values.push_back(analytic::critical_tau(n, b * n, log_l));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double spread = (*hi - *lo) / *hi;
    return {spread < 0.05,
            fmt::format("tau_c at log L = 0, 20, 40: {:.5f} {:.5f} {:.5f}; spread {:.1f}% "
                        "(limit 1/(e^b - 1) = {:.5f})",
                        values[0], values[1], values[2], 100.0 * spread, 1.0 / std::expm1(b))};
}

Outcome energy_single(const SuiteOptions& options) {
    std::mt19937_64 gen(options.seed + 5);
    double worst_sum = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double tau = std::exp(std::uniform_real_distribution<double>(-3.0, 3.0)(gen));
        const int n = std::uniform_int_distribution<int>(1, 200)(gen);
        const auto pmf = energy::atp_pmf_single(tau, n);
        worst_sum = std::max(worst_sum, std::abs(pmf.total() - 1.0));
    }
    const auto summary = montecarlo::run_campaign(
        sim_config(ModelParams(2.0, 6), 1'000'000, options, 5, false));
    const double tv = total_variation(energy::atp_pmf_single(2.0, 6), summary.atp_histogram);
    return {worst_sum <= 1e-12 && tv < 0.005,
            fmt::format("max |sum m_k - 1| = {:.2e}; TV to simulation = {:.5f}", worst_sum, tv)};
}

Outcome energy_multi(const SuiteOptions& options) {
    const auto pmf = energy::atp_pmf_multi(2.0, 10, 8);
    const auto summary = montecarlo::run_campaign(
        sim_config(ModelParams::with_trials(2.0, 10, 8), 1'000'000, options, 6, false));
    const double tv = total_variation(pmf, summary.atp_histogram);

    const int n = 8;
    const int m = 4;
    const auto reference = energy::atp_pmf_multi(1.0, n, m);
    const auto coefficients = oracles::dft_coefficients(
        [&](std::complex<double> z) { return energy::atp_generating_fn(z, 1.0, n); }, m, 64,
        n * m + 1);
    double worst = 0.0;
    for (int k = 0; k <= n * m; ++k) {
        worst = std::max(worst, std::abs(coefficients[static_cast<std::size_t>(k)] - reference(k)));
    }
    return {tv < 0.005 && worst < 1e-8,
            fmt::format("TV to simulation = {:.5f}; generating-function coefficients max error "
                        "{:.2e}",
                        tv, worst)};
}

double nu_oracle_distance(double x, int m, double h) {
    const auto lattice = oracles::self_convolve(oracles::discretize_single_limit(x, h), m);
    const auto nu = energy::atp_limit_multi(x, m);
    double sup = 0.0;
    double cumulative = 0.0;
    const auto per_unit = static_cast<std::size_t>(std::llround(1.0 / h));
    const std::size_t stride = per_unit / 32;
    for (std::size_t i = 0; i + 1 < lattice.size(); ++i) {
        cumulative += lattice[i];
        if (i % stride != 0) continue;
        const double mid = cumulative - 0.5 * lattice[i];
        sup = std::max(sup, std::abs(mid - nu.cdf(static_cast<double>(i) * h)));
    }
    return sup;
}

Outcome limit_measure_nu(const SuiteOptions&) {
    double worst_mass = 0.0;
    for (int m = 1; m <= 3; ++m) {
        for (double x : {0.5, 1.0, 2.0}) {
            worst_mass = std::max(worst_mass, std::abs(energy::atp_limit_multi(x, m).total_mass() - 1.0));
        }
    }
    double worst_identity = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        const auto mu = energy::atp_limit_single(x);
        const auto nu = energy::atp_limit_multi(x, 1);
        worst_identity = std::max(worst_identity,
                                  std::abs(mu.atoms()[0].mass - nu.atoms()[0].mass));
        for (int i = 0; i < 1000; ++i) {
            const double ell = i / 1000.0;
            worst_identity = std::max(worst_identity, std::abs(mu.density(ell) - nu.density(ell)));
        }
    }
    double worst_cdf = 0.0;
    for (int m = 2; m <= 3; ++m) {
        for (double x : {0.5, 1.0, 2.0}) {
            worst_cdf = std::max(worst_cdf, nu_oracle_distance(x, m, 1.0 / 4096.0));
        }
    }
    return {worst_mass <= 1e-6 && worst_identity <= 1e-12 && worst_cdf < 1e-4,
            fmt::format("mass error {:.2e}; M=1 vs single {:.2e}; CDF vs convolution {:.2e}",
                        worst_mass, worst_identity, worst_cdf)};
}

Outcome gaussian_clt(const SuiteOptions&) {
    const int n = 12;
    std::vector<double> distances;
    for (std::int64_t m : {8, 32, 128}) {
        const double log_m = std::log(static_cast<double>(m));
        const double tau = analytic::critical_tau(n, log_m);
        const auto pmf = energy::atp_pmf_multi(tau, n, m);
        const auto g = energy::atp_gaussian_params(tau, static_cast<double>(m));
        distances.push_back(ks_distance_to_normal(pmf, g.mean, g.std_dev));
    }
    const bool decreasing = distances[1] < distances[0] && distances[2] < distances[1];
    return {decreasing, fmt::format("KS at M=8,32,128: {:.5f} {:.5f} {:.5f}", distances[0],
                                    distances[1], distances[2])};
}

Outcome speed_checks(const SuiteOptions& options) {
    double worst_mean = 0.0;
    for (double tau : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        for (int n : {1, 5, 10, 40}) {
            const double alt = n - n / (1.0 + tau);
            worst_mean = std::max(worst_mean, std::abs(speed::erlang_mean(tau, n) - alt) / alt);
        }
    }
    double worst_norm = 0.0;
    double worst_reduction = 0.0;
    for (double tau : {0.5, 1.2, 2.0}) {
        for (int n : {3, 8, 20}) {
            for (std::int64_t m : {1, 4, 16, 1000}) {
                const auto at_zero = speed::response_time_laplace_multi({0.0, 0.0}, tau, n, m);
                worst_norm = std::max(worst_norm, std::abs(at_zero - 1.0));
            }
            for (double z : {0.01, 0.3, 1.0, 5.0}) {
                const auto value = speed::response_time_laplace_multi({z, 0.0}, tau, n, 1);
                const double erlang = std::pow((1.0 + tau) / (1.0 + tau + tau * z), n);
                worst_reduction = std::max(worst_reduction, std::abs(value.real() - erlang));
            }
        }
    }

    const auto summary = montecarlo::run_campaign(
        sim_config(ModelParams::with_trials(1.2, 8, 16), 900'000, options, 9, true));
    const auto estimate = oracles::sample_mean(summary.conditional_time_samples);
    const double transform_mean = speed::conditional_mean_response_time(1.2, 8, 16);
    const double z_score = std::abs(estimate.mean - transform_mean) / estimate.std_error;

    const int n = 40;
    const double log_m = 20.0;
    const std::int64_t m = integer_from_log(log_m);
    const double tau_c = analytic::critical_tau(n, std::log(static_cast<double>(m)));
    const double tau = tau_c * (1.0 - 3.0 * (1.0 + tau_c) / n);
    auto times = montecarlo::sample_conditioned_response_times(tau, n, log_m, 10'000,
                                                               options.seed + 99);
    for (double& t : times) t /= tau * static_cast<double>(m);
    const double ks = oracles::ks_to_uniform(times);

    const bool ok = worst_mean <= 1e-12 && worst_norm <= 1e-12 && worst_reduction <= 1e-12 &&
                    z_score <= 3.0 && ks < 0.08;
    return {ok, fmt::format("Erlang mean {:.1e}; transform at 0 {:.1e}; M=1 reduction {:.1e}; "
                            "conditional mean {:.4f} vs simulated {:.4f} ({:.2f} SE, {} samples); "
                            "uniform-branch KS {:.4f}",
                            worst_mean, worst_norm, worst_reduction, transform_mean, estimate.mean,
                            z_score, summary.conditional_time_samples.size(), ks)};
}

Outcome flux_checks(const SuiteOptions& options) {
    const auto summary = montecarlo::run_campaign(
        sim_config(ModelParams::with_trials(1.5, 6, 20), 100'000, options, 10, false));
    const double tv_mc =
        total_variation(flux::response_count_pmf(1.5, 6, 20), summary.response_count_histogram);

    const int n = 30;
    const std::int64_t m = integer_from_log(15.0);
    const double tau = analytic::critical_tau(n, std::log(static_cast<double>(m)));
    const double rate = flux::flux_poisson_limit(0.0);
    double tv_poisson = 0.0;
    for (std::int64_t k = 0; k <= 60; ++k) {
        tv_poisson += std::abs(std::exp(flux::response_count_log_pmf(k, tau, n, m)) -
                               std::exp(flux::poisson_log_pmf(k, rate)));
    }
    tv_poisson *= 0.5;

    const auto pair = flux::discriminable_probabilities(0.25, 0.75, 50, 3.0);
    return {tv_mc < 0.01 && tv_poisson < 0.02 && pair.decision,
            fmt::format("binomial vs simulation TV {:.5f}; binomial vs Poisson(e^0) TV {:.5f}; "
                        "p=0.25/0.75, M=50 separation {:.3f}",
                        tv_mc, tv_poisson, pair.separation)};
}

Outcome delay_comparison(const SuiteOptions&) {
    const int n = 200;
    double worst_kpr = 0.0;
    for (int i = 0; i <= 480; ++i) {
        const double x = 0.2 + 0.01 * i;
        worst_kpr = std::max(worst_kpr, std::abs(analytic::response_prob_single(x * n, n) -
                                                 analytic::limit_response_curve(
                                                     x, regime::MEqualsOne{})));
    }
    const int nd = 1000;
    const std::int64_t md = 1000;
    const double tau_bar = analytic::delay_critical_tau(nd, md);
    double worst_delay = 0.0;
    for (double x : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        worst_delay = std::max(worst_delay,
                               std::abs(analytic::delay_response_prob_multi(x * tau_bar, nd, md) -
                                        analytic::delay_limit_response(x)));
    }
    return {worst_kpr < 0.01 && worst_delay < 0.002,
            fmt::format("max |p(xN) - e^(-1/x)| = {:.5f}; max delay deviation = {:.5f}", worst_kpr,
                        worst_delay)};
}

Outcome general_checks(const SuiteOptions& options) {
    double worst_reduction = 0.0;
    for (int n : {1, 5, 20, 100}) {
        const auto schedule = general::RateSchedule::uniform(n);
        for (double tau : {0.1, 1.0, 3.0}) {
            const double base = analytic::response_prob_single(tau, n);
            worst_reduction = std::max(
                worst_reduction,
                std::abs(general::response_prob_general(schedule, tau) - base) / base);
        }
        for (double log_m : {1.0, 0.5 * n, 2.0 * n}) {
            const double base = analytic::critical_tau(n, log_m);
            worst_reduction = std::max(
                worst_reduction,
                std::abs(general::critical_tau_general(schedule, log_m) - base) / base);
        }
    }

    std::mt19937_64 gen(options.seed + 12);
    double worst_residual = 0.0;
    for (int i = 0; i < 10; ++i) {
        const int n = std::uniform_int_distribution<int>(2, 200)(gen);
        general::RateSchedule schedule;
        for (int k = 0; k < n; ++k) {
            schedule.b.push_back(std::exp(std::uniform_real_distribution<double>(-1.5, 1.5)(gen)));
        }
        const double log_m = std::uniform_real_distribution<double>(0.1, 2.0 * n)(gen);
        const double tau = general::critical_tau_general(schedule, log_m);
        worst_residual = std::max(worst_residual,
                                  std::abs(oracles::general_residual_mp(schedule.b, tau, log_m)));
    }

    const int n = 160;
    const double b = 0.5;
    general::RateSchedule two_atom;
    for (int k = 0; k < n; ++k) two_atom.b.push_back(k % 2 == 0 ? 0.5 : 2.0);
    const general::DiscreteMeasure measure{{0.5, 2.0}, {0.5, 0.5}};
    double worst_curve = 0.0;
    for (int i = 0; i <= 600; ++i) {
        const double xi = -3.0 + 0.01 * i;
        const double finite = general::finite_response_general(xi, two_atom, b * n);
        const double limit = general::limit_response_general(xi, measure, b).prob;
        worst_curve = std::max(worst_curve, std::abs(finite - limit));
    }
    return {worst_reduction <= 1e-10 && worst_residual < 1e-9 && worst_curve < 0.05,
            fmt::format("b=1 reductions {:.2e}; residual {:.2e}; two-atom curve sup {:.5f}",
                        worst_reduction, worst_residual, worst_curve)};
}

Outcome determinism(const SuiteOptions& options) {
    std::vector<montecarlo::SimSummary> runs;
    for (unsigned workers : {1u, 4u, 16u}) {
        auto config = sim_config(ModelParams::with_trials(1.5, 6, 20), 50'000, options, 13, true);
        config.workers = workers;
        runs.push_back(montecarlo::run_campaign(config));
    }
    const bool same = runs[0] == runs[1] && runs[0] == runs[2];
    return {same, fmt::format("workers 1/4/16: {} ({} responders, {} time samples)",
                              same ? "identical" : "DIFFERENT", runs[0].responders,
                              runs[0].conditional_time_samples.size())};
}

}  // namespace

std::vector<CriterionResult> run_all(const SuiteOptions& options) {
    using Fn = Outcome (*)(const SuiteOptions&);
    const std::pair<const char*, Fn> criteria[] = {
        {"response-probability-vs-simulation", response_probability_oracle},
        {"critical-time-residual", critical_time_residual},
        {"specificity-limit", specificity_limit},
        {"sensitivity-to-ligand-count", sensitivity},
        {"energy-single-trial", energy_single},
        {"energy-multi-trial", energy_multi},
        {"energy-limit-measure", limit_measure_nu},
        {"energy-gaussian-regime", gaussian_clt},
        {"speed", speed_checks},
        {"flux", flux_checks},
        {"delay-model-comparison", delay_comparison},
        {"state-dependent-rates", general_checks},
        {"determinism-across-workers", determinism},
    };

    std::vector<CriterionResult> results;
    const auto suite_start = Clock::now();
    int id = 0;
    for (const auto& [name, fn] : criteria) {
        ++id;
        if (!options.only.empty() && options.only.count(id) == 0) continue;
        CriterionResult result;
        result.id = id;
        result.name = name;
        const auto start = Clock::now();
        try {
            auto [passed, detail] = fn(options);
            result.passed = passed;
            result.detail = std::move(detail);
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = fmt::format("exception: {}", e.what());
        }
        result.seconds = seconds_since(start);
        if (options.on_result) options.on_result(result);
        results.push_back(std::move(result));
    }
    if (options.only.empty() || options.only.count(kCriterionCount) != 0) {
        CriterionResult total;
        total.id = kCriterionCount;
        total.name = "suite-runtime";
        total.seconds = seconds_since(suite_start);
        total.passed = total.seconds < 300.0;
        total.detail = fmt::format("{} criteria in {:.1f} s (limit 300 s)", results.size(),
                                   total.seconds);
        if (options.on_result) options.on_result(total);
        results.push_back(std::move(total));
    }
    return results;
}

std::string format_line(const CriterionResult& result) {
    return fmt::format("{}  {:02d} {:<36} ({:7.2f} s)  {}", result.passed ? "PASS" : "FAIL",
                       result.id, result.name, result.seconds, result.detail);
}

}  // namespace proofread::acceptance
