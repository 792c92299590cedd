#include "proofread/speed.hpp"

#include <algorithm>
#include <cmath>

#include "proofread/numerics.hpp"

namespace proofread::speed {

namespace {

constexpr double kPoleTolerance = 1e-14;

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

void check_tau_steps(double tau, int n_steps) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    require(n_steps >= 1, "n_steps must be >= 1");
}

}  // namespace

double response_time_pdf_single(double t, double tau, int n_steps) {
    check_tau_steps(tau, n_steps);
    require(std::isfinite(t) && t >= 0.0, "t must be finite and >= 0");
    const double theta = (1.0 + tau) / tau;
    if (t == 0.0) {
        return n_steps == 1 ? theta : 0.0;
    }
    const double n = static_cast<double>(n_steps);
    return std::exp(n * std::log(theta) + (n - 1.0) * std::log(t) - theta * t - std::lgamma(n));
}

double erlang_mean(double tau, int n_steps) {
    check_tau_steps(tau, n_steps);
    return static_cast<double>(n_steps) * tau / (1.0 + tau);
}

std::complex<double> response_time_laplace_multi(std::complex<double> z, double tau, int n_steps,
                                                 std::int64_t trials) {
    check_tau_steps(tau, n_steps);
    require(trials >= 1, "trials must be >= 1");
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "z must be finite");
    using C = std::complex<double>;
    const double n = static_cast<double>(n_steps);
    const double m = static_cast<double>(trials);

    const C step_arg = z + 1.0 / tau;
    const C tau_z = tau * z;
    if (std::abs(1.0 + step_arg) < kPoleTolerance || std::abs(1.0 + tau_z) < kPoleTolerance) {
        throw PoleError("response_time_laplace_multi: z at a pole");
    }
    // w^N with w = 1 / (1 + z + 1/tau)
    const C w_n = std::exp(-n * numerics::log1p(step_arg));
    // 1 - s = (tau z + w^N) / (1 + tau z)
    const C one_minus_s_num = tau_z + w_n;
    if (std::abs(one_minus_s_num) < kPoleTolerance * std::max(1.0, std::abs(1.0 + tau_z))) {
        throw PoleError("response_time_laplace_multi: z at a pole of 1 / (1 - s)");
    }
    const C log_s = numerics::log1p(-w_n) - numerics::log1p(tau_z);
    const C one_minus_s_pow = -numerics::expm1(m * log_s);

    const double log_p = n * log_advance_probability(tau);
    const double normalizer = log1m_pow(log_p, std::log(m));

    return (1.0 + tau_z) / one_minus_s_num * w_n * one_minus_s_pow / normalizer;
}

double conditional_mean_response_time(double tau, int n_steps, std::int64_t trials) {
    check_tau_steps(tau, n_steps);
    require(trials >= 1, "trials must be >= 1");
    const double h = 1e-5 / (tau * static_cast<double>(trials));
    const double plus = response_time_laplace_multi({h, 0.0}, tau, n_steps, trials).real();
    const double minus = response_time_laplace_multi({-h, 0.0}, tau, n_steps, trials).real();
    return -(plus - minus) / (2.0 * h);
}

std::complex<double> response_time_limit_laplace(std::complex<double> zeta, double xi) {
    require(std::isfinite(xi), "xi must be finite");
    require(std::isfinite(zeta.real()) && std::isfinite(zeta.imag()), "zeta must be finite");
    const double rate = std::exp(xi);
    const std::complex<double> shifted = zeta + rate;
    if (std::abs(shifted) < kPoleTolerance * std::max(1.0, rate)) {
        throw PoleError("response_time_limit_laplace: zeta = -e^xi");
    }
    const std::complex<double> numerator = -numerics::expm1(-zeta - rate);
    const double denominator = -std::expm1(-rate);
    return numerator / denominator * rate / shifted;
}

double response_time_limit_pdf(double t, const LimitBranch& branch) {
    require(std::isfinite(t) && t >= 0.0, "t must be finite and >= 0");
    if (std::holds_alternative<UniformBranch>(branch)) {
        return t <= 1.0 ? 1.0 : 0.0;
    }
    require(std::isfinite(std::get<ExponentialBranch>(branch).xi), "xi must be finite");
    return std::exp(-t);
}

}  // namespace proofread::speed
