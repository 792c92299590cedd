#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <complex>

#include "proofread/analytic.hpp"
#include "proofread/montecarlo.hpp"
#include "proofread/speed.hpp"

using namespace proofread;
using namespace proofread::speed;

TEST(ErlangDensity, MeanNormalizationAndOccupancy) {
    EXPECT_DOUBLE_EQ(erlang_mean(1.0, 10), 5.0);
    boost::math::quadrature::exp_sinh<double> integrator;
    const double mass =
        integrator.integrate([](double t) { return response_time_pdf_single(t, 0.5, 7); });
    EXPECT_NEAR(mass, 1.0, 1e-10);
    const double mean =
        integrator.integrate([](double t) { return t * response_time_pdf_single(t, 0.5, 7); });
    EXPECT_NEAR(mean, erlang_mean(0.5, 7), 1e-9);
    for (double t : {0.1, 1.0, 3.0, 8.0}) {
        const double scaled =
            analytic::state_occupancy(t, 0.5, 7, 7) * std::pow(1.5 / 0.5, 7);
        EXPECT_NEAR(response_time_pdf_single(t, 0.5, 7), scaled, 1e-12 * scaled + 1e-300);
    }
}

TEST(ConditionedTransform, Examples) {
    EXPECT_NEAR(std::abs(response_time_laplace_multi(0.0, 2.0, 5, 7) - 1.0), 0.0, 1e-12);
    const auto value = response_time_laplace_multi(0.3, 2.0, 5, 1);
    EXPECT_NEAR(value.real(), std::pow(3.0 / 3.6, 5), 1e-12);
    EXPECT_NEAR(value.real(), 0.4018776, 1e-7);
}

TEST(ConditionedTransform, SingleTrialIsErlangTransform) {
    for (double tau : {0.3, 1.0, 4.0}) {
        for (int n : {1, 6, 25}) {
            for (double z : {0.01, 0.5, 3.0}) {
                const double rate = (1.0 + tau) / tau;
                const double erlang = std::pow(rate / (rate + z), n);
                EXPECT_NEAR(response_time_laplace_multi(z, tau, n, 1).real(), erlang, 1e-12);
            }
        }
    }
}

TEST(ConditionedTransform, CompletelyMonotoneOnGrid) {
    const double tau = 1.2;
    const int n = 8;
    const std::int64_t m = 16;
    const double h = 0.05;
    std::vector<double> values;
    for (int i = 0; i <= 80; ++i) values.push_back(response_time_laplace_multi(i * h, tau, n, m).real());
    for (std::size_t i = 0; i < values.size(); ++i) {
        EXPECT_GT(values[i], 0.0);
        if (i > 0) EXPECT_LT(values[i], values[i - 1]);
        if (i > 0 && i + 1 < values.size()) {
            EXPECT_GE(values[i - 1] - 2.0 * values[i] + values[i + 1], -1e-14);
        }
    }
}

TEST(ConditionedTransform, MatchesSimulatedLigands) {
    const double tau = 1.2;
    const int n = 8;
    const std::int64_t m = 16;
    montecarlo::SimConfig config{ModelParams::with_trials(tau, n, m), 200'000, 11, 0, {}, true};
    const auto summary = montecarlo::run_campaign(config);
    const auto& times = summary.conditional_time_samples;
    ASSERT_GT(times.size(), 10'000u);
    for (double z : {0.01, 0.1}) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (double t : times) {
            const double v = std::exp(-z * t);
            sum += v;
            sum_sq += v * v;
        }
        const double count = static_cast<double>(times.size());
        const double mean = sum / count;
        const double se = std::sqrt((sum_sq / count - mean * mean) / count);
        EXPECT_NEAR(response_time_laplace_multi(z, tau, n, m).real(), mean, 3.0 * se) << z;
    }
    double mean_time = 0.0;
    for (double t : times) mean_time += t;
    mean_time /= static_cast<double>(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean_time) * (t - mean_time);
    const double se = std::sqrt(var / static_cast<double>(times.size() - 1) / times.size());
    EXPECT_NEAR(conditional_mean_response_time(tau, n, m), mean_time, 3.0 * se);
}

TEST(LimitTransform, Examples) {
    for (double xi : {-3.0, 0.0, 2.0}) {
        EXPECT_NEAR(std::abs(response_time_limit_laplace(0.0, xi) - 1.0), 0.0, 1e-15);
    }
    const double xi = 20.0;
    const double zeta = 0.7;
    EXPECT_NEAR(response_time_limit_laplace(zeta * std::exp(xi), xi).real(), 1.0 / (1.0 + zeta),
                1e-6);
    EXPECT_THROW(response_time_limit_laplace(-1.0, 0.0), PoleError);
}

TEST(LimitTransform, FiniteSizeAgreement) {
    const int n = 40;
    const double log_m = 20.0;
    const auto m = static_cast<std::int64_t>(std::floor(std::exp(log_m)));
    const double tau_c = analytic::critical_tau(n, std::log(static_cast<double>(m)));
    for (double xi : {-2.0, 0.0, 1.0}) {
        const double tau = tau_c * (1.0 + xi * (1.0 + tau_c) / n);
        for (double zeta : {0.3, 1.0, 3.0}) {
            const double finite =
                response_time_laplace_multi(zeta / (tau * static_cast<double>(m)), tau, n, m).real();
            EXPECT_NEAR(finite, response_time_limit_laplace(zeta, xi).real(), 0.05)
                << xi << " " << zeta;
        }
    }
}

TEST(LimitDensity, Branches) {
    EXPECT_EQ(response_time_limit_pdf(0.5, UniformBranch{}), 1.0);
    EXPECT_EQ(response_time_limit_pdf(1.5, UniformBranch{}), 0.0);
    EXPECT_EQ(response_time_limit_pdf(0.0, ExponentialBranch{2.0}), 1.0);
}

// Conditional mean against tau M e^{-xi} at N = 40, b = 0.5.
TEST(ConditionalMean, LargeXiAsymptotics) {
    const int n = 40;
    const auto m = static_cast<std::int64_t>(std::floor(std::exp(0.5 * n)));
    const double tau_c = analytic::critical_tau(n, std::log(static_cast<double>(m)));
    for (double xi : {1.0, 2.0, 3.0}) {
        const double tau = tau_c * (1.0 + xi * (1.0 + tau_c) / n);
        const double ratio = conditional_mean_response_time(tau, n, m) /
                             (tau * static_cast<double>(m) * std::exp(-xi));
        EXPECT_GE(ratio, 0.8) << xi;
        EXPECT_LE(ratio, 1.25) << xi;
    }
}
