#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "proofread/analytic.hpp"
#include "proofread/energy.hpp"
#include "proofread/montecarlo.hpp"

using namespace proofread;
using namespace proofread::energy;

namespace {

// CDF of the one-trial limit law: exponential with mean x on [0, 1), atom at 1.
double single_limit_cdf(double y, double x) {
    if (y < 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return -std::expm1(-y / x);
}

// Two-trial limit CDF by conditioning on the first trial:
// F2(l) = e^{-1/x} F1(l - 1) + int_0^1 F1(l - u) e^{-u/x} / x du.
double two_trial_cdf(double ell, double x) {
    using boost::math::quadrature::gauss_kronrod;
    const auto integrand = [&](double u) { return single_limit_cdf(ell - u, x) * std::exp(-u / x) / x; };
    double total = std::exp(-1.0 / x) * single_limit_cdf(ell - 1.0, x);
    // Split where F1(l - u) has a kink or a jump.
    std::vector<double> cuts{0.0, 1.0};
    for (double c : {ell - 1.0, ell}) {
        if (c > 0.0 && c < 1.0) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 10, 1e-14);
    }
    return total;
}

}  // namespace

TEST(AtpPmfSingle, Examples) {
    const auto pmf = atp_pmf_single(1.0, 2);
    ASSERT_EQ(pmf.size(), 3u);
    EXPECT_DOUBLE_EQ(pmf(0), 0.5);
    EXPECT_DOUBLE_EQ(pmf(1), 0.25);
    EXPECT_DOUBLE_EQ(pmf(2), 0.25);
    for (double tau : {0.2, 1.0, 7.5}) {
        for (int n : {1, 4, 30}) {
            EXPECT_DOUBLE_EQ(atp_pmf_single(tau, n)(n), analytic::response_prob_single(tau, n));
        }
    }
}

TEST(AtpPmfSingle, PartialSumsTelescope) {
    const double tau = 1.7;
    const int n = 12;
    const auto pmf = atp_pmf_single(tau, n);
    for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(pmf.cdf(k), 1.0 - std::pow(tau / (1.0 + tau), k + 1), 1e-15);
    }
}

TEST(AtpPmfSingle, MatchesSimulation) {
    const double tau = 2.0;
    const int n = 6;
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::uint64_t i = 0; i < 1'000'000; ++i) {
        CounterRng rng(99, i, 0);
        ++counts[static_cast<std::size_t>(montecarlo::simulate_trial(tau, n, rng, false).atp_consumed)];
    }
    EXPECT_LT(total_variation(atp_pmf_single(tau, n), counts), 0.005);
}

TEST(AtpPmfMulti, Examples) {
    const auto single = atp_pmf_single(0.8, 5);
    const auto one = atp_pmf_multi(0.8, 5, 1);
    ASSERT_EQ(one.size(), single.size());
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(one(k), single(k));

    const auto two = atp_pmf_multi(1.0, 1, 2);
    EXPECT_DOUBLE_EQ(two(0), 0.25);
    EXPECT_DOUBLE_EQ(two(1), 0.5);
    EXPECT_DOUBLE_EQ(two(2), 0.25);
    EXPECT_THROW(atp_pmf_multi(1.0, 1000, 2000), CapacityError);
}

TEST(AtpPmfMulti, MeanIsLinear) {
    const double tau = 2.3;
    const int n = 9;
    for (std::int64_t m : {2, 7, 30}) {
        const double mean = atp_pmf_multi(tau, n, m).mean();
        const double expected = static_cast<double>(m) * atp_pmf_single(tau, n).mean();
        EXPECT_NEAR(mean / expected, 1.0, 1e-10);
    }
}

TEST(AtpPmfMulti, MatchesGeneratingFunctionCoefficients) {
    const double tau = 1.0;
    const int n = 8;
    const int m = 4;
    const int samples = 64;
    const auto pmf = atp_pmf_multi(tau, n, m);
    for (int k = 0; k <= n * m; ++k) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < samples; ++j) {
            const auto z = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
            acc += std::pow(atp_generating_fn(z, tau, n), m) * std::pow(z, -k);
        }
        EXPECT_NEAR(acc.real() / samples, pmf(k), 1e-8) << k;
    }
}

TEST(AtpPmfMulti, MatchesSimulation) {
    const double tau = 2.0;
    const int n = 10;
    const std::int64_t m = 8;
    montecarlo::SimConfig config{ModelParams::with_trials(tau, n, m), 200'000, 5, 0, {}, false};
    const auto summary = montecarlo::run_campaign(config);
    EXPECT_LT(total_variation(atp_pmf_multi(tau, n, m), summary.atp_histogram), 0.01);
}

TEST(AtpGeneratingFn, ValuesAndDirectSum) {
    EXPECT_NEAR(std::abs(atp_generating_fn(1.0, 2.5, 7) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(atp_generating_fn(0.0, 2.5, 7) - 1.0 / 3.5), 0.0, 1e-15);
    const double tau = 1.5;
    const int n = 12;
    const auto pmf = atp_pmf_single(tau, n);
    std::mt19937_64 engine(3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const auto z = std::polar(0.9, angle(engine));
        std::complex<double> direct = 0.0;
        for (int k = n; k >= 0; --k) direct = direct * z + pmf(k);
        worst = std::max(worst, std::abs(atp_generating_fn(z, tau, n) - direct));
    }
    EXPECT_LT(worst, 1e-10);
    EXPECT_THROW(atp_generating_fn(1.0 + 1.0 / tau, tau, n), PoleError);
}

TEST(AtpLimitSingle, MassesAndWeakConvergence) {
    const auto mu = atp_limit_single(1.0);
    EXPECT_NEAR(mu.atom_mass(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(mu.total_mass(), 1.0, 1e-12);

    const int n = 400;
    const double x = 0.8;
    const auto pmf = atp_pmf_single(x * n, n);
    const auto limit = atp_limit_single(x);
    double sup = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double y = static_cast<double>(k) / n;
        sup = std::max(sup, std::abs(pmf.cdf(k) - limit.cdf(y)));
    }
    EXPECT_LT(sup, 0.02);
}

TEST(AtpLimitMulti, ReducesToSingleTrial) {
    const auto single = atp_limit_single(0.6);
    const auto multi = atp_limit_multi(0.6, 1);
    EXPECT_NEAR(multi.atom_mass(), single.atom_mass(), 1e-15);
    for (double ell = 0.0; ell < 1.0; ell += 0.05) {
        EXPECT_NEAR(multi.density(ell), single.density(ell), 1e-12);
        EXPECT_NEAR(multi.cdf(ell), single.cdf(ell), 1e-9);
    }
}

TEST(AtpLimitMulti, AtomAtTwoForTwoTrials) {
    EXPECT_NEAR(atp_limit_multi(1.0, 2).atom_mass(), 0.1353353, 1e-7);
}

TEST(AtpLimitMulti, NormalizedForSeveralTrialCounts) {
    for (std::int64_t m : {2, 3, 5, 10, 20}) {
        for (double x : m <= 5 ? std::vector<double>{0.5, 1.0, 2.0} : std::vector<double>{1.0}) {
            const auto nu = atp_limit_multi(x, m);
            EXPECT_NEAR(nu.total_mass(), 1.0, 1e-6) << m << " " << x;
            for (double ell = 0.0; ell < static_cast<double>(m); ell += 0.01 * m) {
                EXPECT_GE(nu.density(ell), -1e-12);
            }
        }
    }
    EXPECT_THROW(atp_limit_multi(1.0, 21), DomainError);
}

TEST(AtpLimitMulti, TwoTrialCdfMatchesConditioning) {
    for (double x : {0.5, 1.0, 2.0}) {
        const auto nu = atp_limit_multi(x, 2);
        for (double ell = 0.05; ell < 2.0; ell += 0.1) {
            EXPECT_NEAR(nu.cdf(ell), two_trial_cdf(ell, x), 1e-8) << x << " " << ell;
        }
    }
}

TEST(AtpGaussian, ParamsAndCentralLimit) {
    const auto a = atp_gaussian_params(2.0, 100.0);
    EXPECT_NEAR(a.mean, 200.0, 1e-12);
    EXPECT_NEAR(a.std_dev, std::sqrt(600.0), 1e-12);
    const auto b = atp_gaussian_params(1.0, 4.0);
    EXPECT_NEAR(b.mean, 4.0, 1e-15);
    EXPECT_NEAR(b.std_dev, std::sqrt(8.0), 1e-15);

    double previous = 1.0;
    for (std::int64_t m : {8, 32, 128}) {
        const double tau = analytic::critical_tau(12, std::log(static_cast<double>(m)));
        const auto g = atp_gaussian_params(tau, static_cast<double>(m));
        const double ks = ks_distance_to_normal(atp_pmf_multi(tau, 12, m), g.mean, g.std_dev);
        EXPECT_LT(ks, previous) << m;
        previous = ks;
    }
}
