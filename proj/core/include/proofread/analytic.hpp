#pragma once

#include <cstdint>
#include <variant>

#include "proofread/core.hpp"

namespace proofread::analytic {

struct TransitionCurvePoint {
    double xi;
    double prob;
};

/// Critical time that grows without bound with N. Carries the leading-order
/// rate, e.g. N / (log M + log L).
struct DivergingTau {
    double leading_order;
};

using LimitTau = std::variant<double, DivergingTau>;

/// p(tau) = (tau / (1 + tau))^N.
double response_prob_single(double tau, int n_steps);

/// 1 - (1 - p)^(M L). Reduces to response_prob_single bit-for-bit when M L = 1.
double response_prob_multi(double tau, int n_steps, double log_trials, double log_ligands = 0.0);
double response_prob_multi(const ModelParams& params);

/// Solves M L p(tau) = 1: 1 / expm1((log M + log L) / N). M L = 1 is an error.
double critical_tau(int n_steps, double log_trials, double log_ligands = 0.0);

/// Leading-order critical time in the given growth regime.
///
/// MEqualsOne needs log_trials == 0 and MConstant needs log_trials == ln M;
/// the other regimes need M > 1.
LimitTau limit_critical_tau(const RegimeSpec& regime, int n_steps, double log_trials,
                            double log_ligands = 0.0);

/// Limiting transition curve. For MEqualsOne and MConstant, xi is the
/// multiplicative coordinate and must be positive.
double limit_response_curve(double xi, const RegimeSpec& regime);

/// Finite-N transition curve p_{ML}(tau_c (1 + xi (1 + tau_c) / N)). Returns 0
/// when the rescaled tau is not positive.
double finite_response_curve(double xi, int n_steps, double log_trials, double log_ligands = 0.0);

/// (1 + tau_c) / N.
double transition_width(int n_steps, double tau_c);

/// n_k(t) = t^(k-1) / (k-1)! exp(-t (1 + tau) / tau).
double state_occupancy(double t, double tau, int n_steps, int k);

/// Delay model: pbar(tau) = tau / (tau + N).
double delay_response_prob(double tau, int n_steps);
/// 1 - (1 - pbar)^M.
double delay_response_prob_multi(double tau, int n_steps, std::int64_t trials);
/// N / (M - 1).
double delay_critical_tau(int n_steps, std::int64_t trials);
/// 1 - exp(-x).
double delay_limit_response(double x);

}  // namespace proofread::analytic
