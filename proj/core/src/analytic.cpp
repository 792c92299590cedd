#include "proofread/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace proofread::analytic {

namespace {

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

void check_steps(int n_steps) { require(n_steps >= 1, "n_steps must be >= 1"); }

void check_tau(double tau) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
}

void check_logs(double log_trials, double log_ligands) {
    require(std::isfinite(log_trials) && log_trials >= 0.0, "log M must be finite and >= 0");
    require(std::isfinite(log_ligands) && log_ligands >= 0.0, "log L must be finite and >= 0");
}

double log_single(double tau, int n_steps) {
    return static_cast<double>(n_steps) * log_advance_probability(tau);
}

double golden_curve(double xi) { return -std::expm1(-std::exp(xi)); }

}  // namespace

double response_prob_single(double tau, int n_steps) {
    check_tau(tau);
    check_steps(n_steps);
    return std::exp(log_single(tau, n_steps));
}

double response_prob_multi(double tau, int n_steps, double log_trials, double log_ligands) {
    check_tau(tau);
    check_steps(n_steps);
    check_logs(log_trials, log_ligands);
    return log1m_pow(log_single(tau, n_steps), log_trials + log_ligands);
}

double response_prob_multi(const ModelParams& params) {
    return response_prob_multi(params.tau(), params.n_steps(), params.log_trials(),
                               params.log_ligands());
}

double critical_tau(int n_steps, double log_trials, double log_ligands) {
    check_steps(n_steps);
    check_logs(log_trials, log_ligands);
    const double log_total = log_trials + log_ligands;
    require(log_total > 0.0, "critical_tau: undefined for M L = 1");
    return 1.0 / std::expm1(log_total / static_cast<double>(n_steps));
}

LimitTau limit_critical_tau(const RegimeSpec& regime, int n_steps, double log_trials,
                            double log_ligands) {
    check_steps(n_steps);
    check_logs(log_trials, log_ligands);
    validate(regime);
    const double n = static_cast<double>(n_steps);
    const double log_total = log_trials + log_ligands;

    if (std::holds_alternative<regime::MEqualsOne>(regime)) {
        require(log_trials == 0.0, "MEqualsOne regime requires log M = 0");
        if (log_ligands == 0.0) {
            return DivergingTau{n};
        }
        return DivergingTau{n / log_ligands};
    }
    if (const auto* constant = std::get_if<regime::MConstant>(&regime)) {
        const double expected = std::log(static_cast<double>(constant->trials));
        require(std::abs(log_trials - expected) <= 1e-9 * std::max(1.0, expected),
                "MConstant regime: log M does not match the regime's M");
        return DivergingTau{n / log_total};
    }
    if (std::holds_alternative<regime::LogMSubN>(regime)) {
        require(log_total > 0.0, "LogMSubN regime requires M L > 1");
        return DivergingTau{n / log_total};
    }
    if (const auto* order = std::get_if<regime::LogMOrderN>(&regime)) {
        return 1.0 / std::expm1(order->b);
    }
    require(log_total > 0.0, "LogMSuperN regime requires M L > 1");
    return std::exp(-log_total / n);
}

double limit_response_curve(double xi, const RegimeSpec& regime) {
    require(std::isfinite(xi), "xi must be finite");
    validate(regime);
    if (std::holds_alternative<regime::MEqualsOne>(regime)) {
        require(xi > 0.0, "MEqualsOne curve requires x > 0");
        return std::exp(-1.0 / xi);
    }
    if (const auto* constant = std::get_if<regime::MConstant>(&regime)) {
        require(xi > 0.0, "MConstant curve requires xi > 0");
        const double log_m = std::log(static_cast<double>(constant->trials));
        // 1 - (1 - e^{-ln M / xi})^M
        return log1m_pow(-log_m / xi, log_m);
    }
    return golden_curve(xi);
}

double finite_response_curve(double xi, int n_steps, double log_trials, double log_ligands) {
    require(std::isfinite(xi), "xi must be finite");
    const double tau_c = critical_tau(n_steps, log_trials, log_ligands);
    const double tau = tau_c * (1.0 + xi * (1.0 + tau_c) / static_cast<double>(n_steps));
    if (tau <= 0.0) {
        return 0.0;
    }
    return response_prob_multi(tau, n_steps, log_trials, log_ligands);
}

double transition_width(int n_steps, double tau_c) {
    check_steps(n_steps);
    require(std::isfinite(tau_c) && tau_c >= 0.0, "tau_c must be finite and >= 0");
    return (1.0 + tau_c) / static_cast<double>(n_steps);
}

double state_occupancy(double t, double tau, int n_steps, int k) {
    check_tau(tau);
    check_steps(n_steps);
    require(std::isfinite(t) && t >= 0.0, "t must be finite and >= 0");
    require(k >= 1 && k <= n_steps, "k must lie in [1, N]");
    const double rate = (1.0 + tau) / tau;
    if (t == 0.0) {
        return k == 1 ? 1.0 : 0.0;
    }
    // Direct form while t^(k-1) cannot overflow.
    if (k <= 20 && t < 1e15) {
        return std::pow(t, k - 1) / std::tgamma(k) * std::exp(-t * rate);
    }
    return std::exp(static_cast<double>(k - 1) * std::log(t) - std::lgamma(k) - t * rate);
}

double delay_response_prob(double tau, int n_steps) {
    require(std::isfinite(tau) && tau >= 0.0, "tau must be finite and >= 0");
    check_steps(n_steps);
    return tau / (tau + static_cast<double>(n_steps));
}

double delay_response_prob_multi(double tau, int n_steps, std::int64_t trials) {
    require(trials >= 1, "trials must be >= 1");
    const double p = delay_response_prob(tau, n_steps);
    if (p == 0.0) {
        return 0.0;
    }
    return log1m_pow(std::log(p), std::log(static_cast<double>(trials)));
}

double delay_critical_tau(int n_steps, std::int64_t trials) {
    check_steps(n_steps);
    require(trials >= 2, "delay_critical_tau requires M >= 2");
    return static_cast<double>(n_steps) / static_cast<double>(trials - 1);
}

double delay_limit_response(double x) {
    require(std::isfinite(x) && x >= 0.0, "x must be finite and >= 0");
    return -std::expm1(-x);
}

}  // namespace proofread::analytic
