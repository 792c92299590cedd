#pragma once

#include <span>
#include <vector>

#include "proofread/core.hpp"

namespace proofread::general {

/// Per-state rate multipliers: state k advances with probability
/// b_k tau / (1 + b_k tau).
struct RateSchedule {
    std::vector<double> b;
    double reference_tau = 1.0;

    /// Throws DomainError unless b is nonempty and every entry is positive.
    void validate() const;
    [[nodiscard]] int n_steps() const { return static_cast<int>(b.size()); }

    /// b_k = phi_k tau_k / reference_tau.
    static RateSchedule from_rates(std::span<const double> phi, std::span<const double> tau_k,
                                   double reference_tau);
    static RateSchedule uniform(int n_steps, double value = 1.0);
};

/// Finite measure sum_i w_i delta_{x_i} with w summing to 1.
struct DiscreteMeasure {
    std::vector<double> locations;
    std::vector<double> weights;

    void validate() const;
    /// Empirical measure (1/N) sum_k delta_{b_k}.
    static DiscreteMeasure empirical(const RateSchedule& schedule);
};

struct GeneralLimit {
    double prob;
    double t_bar;
    double d;
};

/// ln G_N(tau) = sum_k ln(b_k tau / (1 + b_k tau)).
double log_response_prob_general(const RateSchedule& schedule, double tau);
/// G_N(tau).
double response_prob_general(const RateSchedule& schedule, double tau);

/// Root of ln G_N(tau) + ln M = 0 by bisection in ln tau over [-27.6, 27.6].
/// Throws BracketError if the root lies outside.
double critical_tau_general(const RateSchedule& schedule, double log_trials);

/// Root T of sum_i w_i ln(x_i T / (1 + x_i T)) = -b.
double limit_critical_tau_general(const DiscreteMeasure& measure, double b);

/// Limit transition curve 1 - exp(-exp(xi)) together with T and
/// D = sum_i w_i / (1 + T x_i).
GeneralLimit limit_response_general(double xi, const DiscreteMeasure& measure, double b);

/// (1/N) sum_k 1 / (1 + tau b_k).
double rescaling_factor(const RateSchedule& schedule, double tau);

/// Finite-N curve 1 - (1 - G_N(tau))^M at tau = tau_c (1 + xi / (N D_N)), with
/// D_N = rescaling_factor(schedule, tau_c). Returns 0 if that tau is not positive.
double finite_response_general(double xi, const RateSchedule& schedule, double log_trials);

}  // namespace proofread::general
