#include "proofread/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "proofread/analytic.hpp"
#include "proofread/numerics.hpp"

namespace proofread::flux {

namespace {

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

void check_probability(double p) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
}

double log_response_prob(double tau, int n_steps) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    require(n_steps >= 1, "n_steps must be >= 1");
    return static_cast<double>(n_steps) * log_advance_probability(tau);
}

}  // namespace

double binomial_log_pmf(std::int64_t k, double log_p, std::int64_t trials) {
    require(trials >= 1, "trials must be >= 1");
    require(!std::isnan(log_p) && log_p <= 0.0, "ln p must be <= 0");
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (k < 0 || k > trials) {
        return kNegInf;
    }
    const double log_q = std::log1p(-std::exp(log_p));
    const auto kd = static_cast<double>(k);
    const auto md = static_cast<double>(trials);
    // Guard 0 * (-inf) at the endpoints.
    const double success = k == 0 ? 0.0 : kd * log_p;
    const double failure = k == trials ? 0.0 : (md - kd) * log_q;
    return numerics::log_binomial(md, kd) + success + failure;
}

double response_count_log_pmf(std::int64_t k, double tau, int n_steps, std::int64_t trials) {
    return binomial_log_pmf(k, log_response_prob(tau, n_steps), trials);
}

DiscretePmf binomial_pmf(double p, std::int64_t trials) {
    check_probability(p);
    require(trials >= 1, "trials must be >= 1");
    const double log_p = std::log(p);
    std::vector<double> masses(static_cast<std::size_t>(trials) + 1);
    for (std::int64_t k = 0; k <= trials; ++k) {
        masses[static_cast<std::size_t>(k)] = std::exp(binomial_log_pmf(k, log_p, trials));
    }
    return DiscretePmf(0, std::move(masses));
}

DiscretePmf response_count_pmf(double tau, int n_steps, std::int64_t trials) {
    require(trials >= 1, "trials must be >= 1");
    const double log_p = log_response_prob(tau, n_steps);
    std::vector<double> masses(static_cast<std::size_t>(trials) + 1);
    for (std::int64_t k = 0; k <= trials; ++k) {
        masses[static_cast<std::size_t>(k)] = std::exp(binomial_log_pmf(k, log_p, trials));
    }
    return DiscretePmf(0, std::move(masses));
}

double poisson_log_pmf(std::int64_t k, double rate) {
    require(std::isfinite(rate) && rate > 0.0, "Poisson rate must be positive and finite");
    if (k < 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const auto kd = static_cast<double>(k);
    return kd * std::log(rate) - rate - std::lgamma(kd + 1.0);
}

GaussianParams flux_gaussian_limit_from_probability(double p, std::int64_t trials) {
    check_probability(p);
    require(trials >= 1, "trials must be >= 1");
    const double mean = static_cast<double>(trials) * p;
    return {mean, std::sqrt(mean * (1.0 - p))};
}

GaussianParams flux_gaussian_limit(double tau, int n_steps, std::int64_t trials) {
    return flux_gaussian_limit_from_probability(analytic::response_prob_single(tau, n_steps),
                                                trials);
}

double flux_poisson_limit(double x) {
    require(std::isfinite(x), "x must be finite");
    return std::exp(x);
}

Discrimination discriminable_probabilities(double p1, double p2, std::int64_t trials,
                                           double margin_sigmas) {
    check_probability(p1);
    check_probability(p2);
    require(trials >= 1, "trials must be >= 1");
    require(std::isfinite(margin_sigmas) && margin_sigmas > 0.0, "margin must be positive");
    const double scale = std::max(std::sqrt(p1), std::sqrt(p2));
    if (scale == 0.0) {
        return {false, 0.0};
    }
    const double separation =
        std::abs(p1 - p2) * std::sqrt(static_cast<double>(trials)) / scale;
    return {separation >= margin_sigmas, separation};
}

Discrimination discriminable(double tau1, double tau2, int n_steps, std::int64_t trials,
                             double margin_sigmas) {
    return discriminable_probabilities(analytic::response_prob_single(tau1, n_steps),
                                       analytic::response_prob_single(tau2, n_steps), trials,
                                       margin_sigmas);
}

}  // namespace proofread::flux
