#include "proofread/energy.hpp"

#include <cmath>
#include <vector>

#include "proofread/numerics.hpp"

namespace proofread::energy {

namespace {

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

void check_tau_steps(double tau, int n_steps) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    require(n_steps >= 1, "n_steps must be >= 1");
}

void check_x(double x) { require(std::isfinite(x) && x > 0.0, "x must be positive and finite"); }

std::vector<double> single_masses(double tau, int n_steps) {
    const double log_q = log_advance_probability(tau);
    const double detach = 1.0 / (1.0 + tau);
    std::vector<double> masses(static_cast<std::size_t>(n_steps) + 1);
    for (int k = 0; k < n_steps; ++k) {
        masses[static_cast<std::size_t>(k)] = detach * std::exp(k * log_q);
    }
    masses.back() = std::exp(n_steps * log_q);
    return masses;
}

}  // namespace

DiscretePmf atp_pmf_single(double tau, int n_steps) {
    check_tau_steps(tau, n_steps);
    return DiscretePmf(0, single_masses(tau, n_steps));
}

DiscretePmf atp_pmf_multi(double tau, int n_steps, std::int64_t trials) {
    check_tau_steps(tau, n_steps);
    require(trials >= 1, "trials must be >= 1");
    if (trials > kMaxConvolutionSupport / n_steps) {
        throw CapacityError("atp_pmf_multi: trials * n_steps exceeds 1e6");
    }
    const auto single = single_masses(tau, n_steps);
    std::vector<double> running = single;
    std::vector<double> next;
    for (std::int64_t m = 1; m < trials; ++m) {
        next.assign(running.size() + single.size() - 1, 0.0);
        for (std::size_t i = 0; i < running.size(); ++i) {
            const double a = running[i];
            for (std::size_t j = 0; j < single.size(); ++j) {
                next[i + j] += a * single[j];
            }
        }
        running.swap(next);
    }
    return DiscretePmf(0, std::move(running));
}

std::complex<double> atp_generating_fn(std::complex<double> z, double tau, int n_steps) {
    check_tau_steps(tau, n_steps);
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "z must be finite");
    const double z0 = 1.0 + 1.0 / tau;
    const std::complex<double> gap = z0 - z;
    if (std::abs(gap) <= 1e-12 * z0) {
        throw PoleError("atp_generating_fn: z too close to z0 = 1 + 1/tau");
    }
    const std::complex<double> ratio_pow = std::pow(z / z0, n_steps);
    return (z0 - 1.0) / gap * (1.0 + ratio_pow * tau * (1.0 - z));
}

MixedMeasure atp_limit_single(double x) {
    check_x(x);
    std::vector<MixedMeasure::Atom> atoms{{1.0, std::exp(-1.0 / x)}};
    std::vector<MixedMeasure::Segment> segments{
        {0.0, 1.0, [x](double ell) { return std::exp(-ell / x) / x; }}};
    return MixedMeasure(std::move(atoms), std::move(segments));
}

namespace {

// Continuous density of the M-trial limit law, using the polynomial that holds
// on [piece, piece + 1]. Evaluating by piece rather than by ell gives the
// one-sided limits at the breakpoints, where the density jumps.
double multi_density_on_piece(double ell, double x, std::int64_t trials, std::int64_t piece) {
    using Real = long double;
    const Real lx = static_cast<Real>(x);
    const Real l_ell = static_cast<Real>(ell);
    const Real l_m = static_cast<Real>(trials);
    // Terms with ell < M - j on this piece.
    const std::int64_t last_below = trials - 1 - piece;

    numerics::CompensatedSum<Real> total;
    for (std::int64_t k = 1; k <= trials; ++k) {
        // The inner alternating sum over all j in 0..k vanishes identically
        // (k-th difference of a degree k-1 polynomial), so the displayed terms
        // equal minus the remaining ones. Evaluate whichever side has the
        // smaller terms.
        numerics::CompensatedSum<Real> below;
        numerics::CompensatedSum<Real> above;
        Real below_abs = 0.0L;
        Real above_abs = 0.0L;
        const Real log_fact = std::lgamma(static_cast<Real>(k));
        for (std::int64_t j = 0; j <= k; ++j) {
            const Real d = (l_ell - l_m + static_cast<Real>(j)) / lx;
            Real magnitude = 0.0L;
            if (k == 1) {
                magnitude = 1.0L;
            } else if (d != 0.0L) {
                magnitude = std::exp(static_cast<Real>(k - 1) * std::log(std::fabs(d)) - log_fact);
            }
            const Real binom = std::exp(static_cast<Real>(
                numerics::log_binomial(static_cast<double>(k), static_cast<double>(j))));
            Real term = binom * magnitude;
            if (d < 0.0L && (k - 1) % 2 == 1) {
                term = -term;
            }
            const bool odd = (k - j) % 2 != 0;
            if (j <= last_below) {
                // sign (-1)^(k - j + 1)
                below += odd ? term : -term;
                below_abs += std::fabs(term);
            } else {
                // sign (-1)^(k - j)
                above += odd ? -term : term;
                above_abs += std::fabs(term);
            }
        }
        const Real inner = below_abs <= above_abs ? below.value() : above.value();
        const Real binom_mk = std::exp(static_cast<Real>(
            numerics::log_binomial(static_cast<double>(trials), static_cast<double>(k))));
        total += binom_mk * inner;
    }
    return static_cast<double>(std::exp(-l_ell / lx) / lx * total.value());
}

}  // namespace

double atp_limit_multi_density(double ell, double x, std::int64_t trials) {
    check_x(x);
    require(trials >= 1 && trials <= kMaxLimitTrials, "trials must lie in [1, 20]");
    if (!(ell >= 0.0 && ell < static_cast<double>(trials))) {
        return 0.0;
    }
    return multi_density_on_piece(ell, x, trials, static_cast<std::int64_t>(std::floor(ell)));
}

MixedMeasure atp_limit_multi(double x, std::int64_t trials) {
    check_x(x);
    require(trials >= 1 && trials <= kMaxLimitTrials, "trials must lie in [1, 20]");
    const auto m = static_cast<double>(trials);
    std::vector<MixedMeasure::Atom> atoms{{m, std::exp(-m / x)}};
    std::vector<MixedMeasure::Segment> segments;
    for (std::int64_t i = 0; i < trials; ++i) {
        segments.push_back({static_cast<double>(i), static_cast<double>(i + 1),
                            [x, trials, i](double ell) {
                                return multi_density_on_piece(ell, x, trials, i);
                            }});
    }
    return MixedMeasure(std::move(atoms), std::move(segments));
}

GaussianParams atp_gaussian_params(double tau, double trials) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    require(std::isfinite(trials) && trials > 0.0, "trials must be positive and finite");
    return {tau * trials, std::sqrt(tau * (1.0 + tau) * trials)};
}

}  // namespace proofread::energy
