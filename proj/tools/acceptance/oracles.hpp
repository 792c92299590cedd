#pragma once

// Independent reference computations used by the tests and the verify suite.
// Nothing here is called by the library itself.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace proofread::oracles {

/// 1 - (1 - p)^M with p = exp(log_p), M = exp(log_count), in 50-digit arithmetic.
double log1m_pow_mp(double log_p, double log_count);

/// ln(M L) + N ln(tau / (1 + tau)) in 50-digit arithmetic, returned as
/// M L p(tau) - 1.
double critical_residual_mp(double tau, int n_steps, double log_total);

/// ln M + sum_k ln(b_k tau / (1 + b_k tau)) in 50-digit arithmetic, returned as
/// M G_N(tau) - 1.
double general_residual_mp(std::span<const double> b, double tau, double log_trials);

/// Masses on the lattice {0, h, ..., 1} of the single-trial limit law with
/// parameter x: the density is split onto neighbouring lattice points with
/// linear (hat) weights, the atom at 1 is kept exact.
std::vector<double> discretize_single_limit(double x, double h);

/// Direct discrete self-convolution, `copies` >= 1.
std::vector<double> self_convolve(const std::vector<double>& masses, int copies);

/// Coefficients 0..count-1 of G(z)^power extracted from `samples` equispaced
/// points on the unit circle.
std::vector<double> dft_coefficients(const std::function<std::complex<double>(std::complex<double>)>& g,
                                     int power, int samples, int count);

/// Kolmogorov-Smirnov distance of a sample to Uniform(0, 1).
double ks_to_uniform(std::vector<double> sample);

/// Kolmogorov-Smirnov distance between two samples.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MeanEstimate {
    double mean;
    double std_error;
};
MeanEstimate sample_mean(std::span<const double> sample);

/// Adaptive Simpson on [lo, hi] to absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace proofread::oracles
