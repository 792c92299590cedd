#pragma once

#include <cstdint>

#include "proofread/core.hpp"

namespace proofread::flux {

inline constexpr double kDefaultMarginSigmas = 3.0;

struct GaussianParams {
    double mean;
    double std_dev;
};

struct Discrimination {
    bool decision;
    double separation;
};

/// Binomial(M, p(tau)) law of the number of responding trials.
DiscretePmf response_count_pmf(double tau, int n_steps, std::int64_t trials);
DiscretePmf binomial_pmf(double p, std::int64_t trials);

/// ln P(X = k) for X ~ Binomial(M, p(tau)); -inf outside {0, ..., M}.
/// Usable for M far beyond what a full pmf vector could hold.
double response_count_log_pmf(std::int64_t k, double tau, int n_steps, std::int64_t trials);
double binomial_log_pmf(std::int64_t k, double log_p, std::int64_t trials);

/// ln P(X = k) for X ~ Poisson(rate).
double poisson_log_pmf(std::int64_t k, double rate);

/// (M p, sqrt(M p (1 - p))). Accurate as an approximation once M p >= 10.
GaussianParams flux_gaussian_limit(double tau, int n_steps, std::int64_t trials);
GaussianParams flux_gaussian_limit_from_probability(double p, std::int64_t trials);

/// Poisson rate e^x of the response count when tau = tau_c (1 + x (1 + tau_c) / N).
double flux_poisson_limit(double x);

/// separation = |p1 - p2| sqrt(M) / max(sqrt p1, sqrt p2); decision is
/// separation >= margin_sigmas.
Discrimination discriminable(double tau1, double tau2, int n_steps, std::int64_t trials,
                             double margin_sigmas = kDefaultMarginSigmas);
Discrimination discriminable_probabilities(double p1, double p2, std::int64_t trials,
                                           double margin_sigmas = kDefaultMarginSigmas);

}  // namespace proofread::flux
