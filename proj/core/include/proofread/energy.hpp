#pragma once

#include <complex>
#include <cstdint>

#include "proofread/core.hpp"

namespace proofread::energy {

/// Largest trials * n_steps accepted by atp_pmf_multi.
inline constexpr std::int64_t kMaxConvolutionSupport = 1'000'000;
/// atp_limit_multi is restricted to 1 <= M <= this.
inline constexpr std::int64_t kMaxLimitTrials = 20;

struct GaussianParams {
    double mean;
    double std_dev;
};

/// ATP consumed in one trial, on {0, ..., N}.
DiscretePmf atp_pmf_single(double tau, int n_steps);

/// ATP consumed over M independent trials, on {0, ..., M N}. Iterated direct
/// convolution, so the cost is quadratic in M N.
DiscretePmf atp_pmf_multi(double tau, int n_steps, std::int64_t trials);

/// Generating function sum_k z^k m_k in closed form. Throws PoleError within
/// 1e-12 (relative) of z0 = 1 + 1/tau, where the closed form is 0/0.
std::complex<double> atp_generating_fn(std::complex<double> z, double tau, int n_steps);

/// Limit law of ATP / N for one trial with tau = x N.
MixedMeasure atp_limit_single(double x);

/// Limit law of ATP / N over M trials with tau = x N; 1 <= M <= 20.
MixedMeasure atp_limit_multi(double x, std::int64_t trials);

/// Density of the continuous part of atp_limit_multi at ell, exposed for
/// testing. Zero outside [0, M).
double atp_limit_multi_density(double ell, double x, std::int64_t trials);

/// (tau M, sqrt(tau (1 + tau) M)).
GaussianParams atp_gaussian_params(double tau, double trials);

}  // namespace proofread::energy
