#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "proofread/core.hpp"
#include "proofread/numerics.hpp"

using namespace proofread;

namespace {

double log1m_pow_reference(double log_p, double log_count) {
    using Mp = boost::multiprecision::cpp_bin_float_50;
    const Mp p = exp(Mp(log_p));
    const Mp m = exp(Mp(log_count));
    return static_cast<double>(Mp(1) - exp(m * log1p(-p)));
}

}  // namespace

TEST(ModelParams, RejectsBadInputs) {
    EXPECT_THROW(ModelParams(0.0, 3), DomainError);
    EXPECT_THROW(ModelParams(-1.0, 3), DomainError);
    EXPECT_THROW(ModelParams(std::numeric_limits<double>::infinity(), 3), DomainError);
    EXPECT_THROW(ModelParams(1.0, 0), DomainError);
    EXPECT_THROW(ModelParams(1.0, 3, -0.1), DomainError);
    EXPECT_THROW(ModelParams(1.0, 3, 0.0, -0.1), DomainError);
    EXPECT_NO_THROW(ModelParams(1.0, 3, 0.0, 0.0));
}

TEST(ModelParams, EnergyRoundTrip) {
    for (double e : {-5.0, -0.3, 0.0, 1.7, 12.0}) {
        const auto params = ModelParams::from_energy(e, 4);
        EXPECT_NEAR(params.tau(), std::exp(e), 1e-15 * std::exp(e));
        const auto back = ModelParams(params.tau(), 4).binding_energy();
        EXPECT_NEAR(back, e, 1e-15 * std::max(1.0, std::abs(e)));
    }
}

TEST(ModelParams, IntegerTrialsSnapsNearIntegers) {
    EXPECT_EQ(ModelParams(1.0, 2, std::log(16.0)).integer_trials(), 16);
    EXPECT_EQ(ModelParams::with_trials(1.0, 2, 1024).integer_trials(), 1024);
    EXPECT_EQ(ModelParams(1.0, 2, std::log(10.5)).integer_trials(), 10);
    EXPECT_EQ(ModelParams(1.0, 2, 2.0).integer_trials(), 7);
    EXPECT_THROW(integer_from_log(50.0), DomainError);
}

TEST(Regime, Validation) {
    EXPECT_NO_THROW(validate(RegimeSpec{regime::MEqualsOne{}}));
    EXPECT_THROW(validate(RegimeSpec{regime::LogMOrderN{0.0}}), DomainError);
    EXPECT_THROW(validate(RegimeSpec{regime::LogMOrderN{-1.0}}), DomainError);
    EXPECT_THROW(validate(RegimeSpec{regime::MConstant{1}}), DomainError);
    EXPECT_TRUE(trials_diverge(RegimeSpec{regime::LogMSuperN{}}));
    EXPECT_FALSE(trials_diverge(RegimeSpec{regime::MConstant{5}}));
    EXPECT_FALSE(to_string(RegimeSpec{regime::LogMOrderN{0.5}}).empty());
}

TEST(DiscretePmf, ValidatesMasses) {
    EXPECT_THROW(DiscretePmf(0, {0.5, 0.6}), DomainError);
    EXPECT_THROW(DiscretePmf(0, {1.1, -0.1}), DomainError);
    EXPECT_THROW(DiscretePmf(0, {}), DomainError);
    const DiscretePmf pmf(2, {0.25, 0.5, 0.25});
    EXPECT_EQ(pmf.min_support(), 2);
    EXPECT_EQ(pmf.max_support(), 4);
    EXPECT_DOUBLE_EQ(pmf(3), 0.5);
    EXPECT_DOUBLE_EQ(pmf(7), 0.0);
    EXPECT_DOUBLE_EQ(pmf.cdf(1), 0.0);
    EXPECT_DOUBLE_EQ(pmf.cdf(3), 0.75);
    EXPECT_DOUBLE_EQ(pmf.cdf(10), 1.0);
    EXPECT_DOUBLE_EQ(pmf.mean(), 3.0);
    EXPECT_DOUBLE_EQ(pmf.variance(), 0.5);
}

TEST(DiscretePmf, TotalVariation) {
    const DiscretePmf a(0, {0.5, 0.5});
    const DiscretePmf b(1, {0.5, 0.5});
    EXPECT_DOUBLE_EQ(total_variation(a, b), 0.5);
    EXPECT_DOUBLE_EQ(total_variation(a, a), 0.0);
    const std::vector<std::uint64_t> counts{0, 10, 10};
    EXPECT_DOUBLE_EQ(total_variation(a, counts), 0.5);
    EXPECT_DOUBLE_EQ(total_variation(b, counts), 0.0);
}

TEST(DiscretePmf, KsDistanceChecksBothSidesOfJump) {
    // Point mass at 0: the normal CDF is 1/2 there, so both sides give 1/2.
    const DiscretePmf point(0, {1.0});
    EXPECT_NEAR(ks_distance_to_normal(point, 0.0, 1.0), 0.5, 1e-15);
}

TEST(MixedMeasure, ExponentialWithAtom) {
    const double x = 0.7;
    const MixedMeasure mu({{1.0, std::exp(-1.0 / x)}},
                          {{0.0, 1.0, [x](double l) { return std::exp(-l / x) / x; }}});
    EXPECT_NEAR(mu.total_mass(), 1.0, 1e-10);
    EXPECT_NEAR(mu.atom_mass(), std::exp(-1.0 / x), 1e-15);
    EXPECT_NEAR(mu.cdf(0.5), -std::expm1(-0.5 / x), 1e-10);
    EXPECT_NEAR(mu.cdf(1.0), 1.0, 1e-10);
    EXPECT_DOUBLE_EQ(mu.density(1.5), 0.0);
}

TEST(MixedMeasure, RejectsBadMeasures) {
    const auto one = [](double) { return 1.0; };
    EXPECT_THROW(MixedMeasure({{0.5, 0.5}}, {{0.0, 1.0, one}}), DomainError);
    EXPECT_THROW(MixedMeasure({}, {{0.0, 1.0, [](double l) { return 2.0 - 4.0 * l; }}}),
                 DomainError);
    EXPECT_THROW(MixedMeasure({}, {{0.0, 0.6, one}, {0.5, 0.9, one}}), DomainError);
}

TEST(Log1mPow, Examples) {
    EXPECT_DOUBLE_EQ(log1m_pow(std::log(0.5), std::log(2.0)), 0.75);
    const double reference = log1m_pow_reference(-50.0, 50.0);
    EXPECT_NEAR(log1m_pow(-50.0, 50.0), reference, 1e-12);
    EXPECT_NEAR(reference, 0.63212, 1e-5);
    for (double lp : {-700.0, -30.0, -1.0, -1e-3, -1e-12}) {
        EXPECT_EQ(log1m_pow(lp, 0.0), std::exp(lp));
    }
}

TEST(Log1mPow, MatchesHighPrecisionAcrossRegimes) {
    for (double lp : {-600.0, -40.0, -10.0, -2.0, -0.5, -1e-3, -1e-9}) {
        for (double lm : {0.1, 1.0, 5.0, 20.0, 45.0, 300.0}) {
            const double ref = log1m_pow_reference(lp, lm);
            EXPECT_NEAR(log1m_pow(lp, lm), ref, 1e-13 + 1e-12 * ref) << lp << " " << lm;
        }
    }
}

TEST(Log1mPow, MonotoneInBothArguments) {
    for (double lp = -30.0; lp < 0.0; lp += 1.5) {
        double previous = -1.0;
        for (double lm = 0.0; lm < 40.0; lm += 0.5) {
            const double value = log1m_pow(lp, lm);
            EXPECT_GE(value, previous);
            previous = value;
        }
    }
    for (double lm = 0.0; lm < 40.0; lm += 2.5) {
        double previous = -1.0;
        for (double lp = -40.0; lp < 0.0; lp += 0.25) {
            const double value = log1m_pow(lp, lm);
            EXPECT_GE(value, previous);
            previous = value;
        }
    }
}

TEST(Log1mPow, FirstOrderForTinyProducts) {
    for (double lp : {-40.0, -30.0, -25.0}) {
        for (double lm : {0.5, 3.0, 6.0}) {
            const double pm = std::exp(lp + lm);
            ASSERT_LE(pm, 1e-8);
            EXPECT_NEAR(log1m_pow(lp, lm) / pm, 1.0, 1e-6);
        }
    }
}

TEST(Log1mPow, AdvanceProbability) {
    EXPECT_NEAR(log_advance_probability(1.0), std::log(0.5), 1e-16);
    EXPECT_NEAR(log_advance_probability(1e-300), std::log(1e-300), 1e-12);
    EXPECT_NEAR(log_advance_probability(1e12), -1e-12, 1e-24);
}

TEST(Numerics, CompensatedSumRecoversSmallTerms) {
    numerics::CompensatedSum<double> sum;
    sum += 1.0;
    for (int i = 0; i < 1000; ++i) sum += 1e-16;
    sum += -1.0;
    EXPECT_NEAR(sum.value(), 1e-13, 1e-20);
}

TEST(Numerics, Helpers) {
    EXPECT_NEAR(numerics::log_binomial(10, 3), std::log(120.0), 1e-13);
    EXPECT_NEAR(numerics::log_add_exp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
    EXPECT_NEAR(numerics::normal_cdf(0.0), 0.5, 1e-16);
    EXPECT_NEAR(numerics::simpson([](double t) { return t * t; }, 0.0, 3.0, 8), 9.0, 1e-12);
    const auto z = std::complex<double>(1e-10, 2e-10);
    EXPECT_NEAR(std::abs(numerics::log1p(z) - z), 0.0, 1e-19);
    EXPECT_NEAR(std::abs(numerics::expm1(z) - z), 0.0, 1e-19);
}
