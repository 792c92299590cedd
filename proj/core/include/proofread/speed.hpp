#pragma once

#include <complex>
#include <cstdint>
#include <variant>

#include "proofread/core.hpp"

namespace proofread::speed {

/// Density of T / (tau M) in the regime xi -> -infinity.
struct UniformBranch {};
/// Density of T e^xi / (tau M) in the regime xi -> +infinity.
struct ExponentialBranch {
    double xi;
};
using LimitBranch = std::variant<UniformBranch, ExponentialBranch>;

/// Erlang(N, (1 + tau) / tau) density of the single-trial response time.
double response_time_pdf_single(double t, double tau, int n_steps);

/// N tau / (1 + tau).
double erlang_mean(double tau, int n_steps);

/// Laplace transform of the total bound time of a ligand, conditioned on
/// responding within M trials. Throws PoleError near singular points.
std::complex<double> response_time_laplace_multi(std::complex<double> z, double tau, int n_steps,
                                                 std::int64_t trials);

/// Conditional mean -d/dz of the transform at 0, by central difference with
/// step 1e-5 / (tau M).
double conditional_mean_response_time(double tau, int n_steps, std::int64_t trials);

/// Limit of the transform at zeta / (tau M) under the scaling with parameter xi.
std::complex<double> response_time_limit_laplace(std::complex<double> zeta, double xi);

double response_time_limit_pdf(double t, const LimitBranch& branch);

}  // namespace proofread::speed
