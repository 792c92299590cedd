#include "proofread/general.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "proofread/numerics.hpp"

namespace proofread::general {

namespace {

constexpr double kLogTauLow = -27.6;
constexpr double kLogTauHigh = 27.6;
constexpr double kLimitLogLow = -50.0;
constexpr double kLimitLogHigh = 50.0;

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

// Root of an increasing function of u on [lo, hi], iterated until the
// midpoint no longer moves.
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         const char* what) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        if (f_lo == 0.0) return lo;
        if (f_hi == 0.0) return hi;
        std::ostringstream os;
        os << what << ": root not bracketed by [" << lo << ", " << hi << "] (f = " << f_lo
           << ", " << f_hi << ")";
        throw BracketError(os.str());
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = f(mid);
        if (value == 0.0) return mid;
        if (value < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void RateSchedule::validate() const {
    require(!b.empty(), "RateSchedule: b must be nonempty");
    for (double v : b) {
        require(std::isfinite(v) && v > 0.0, "RateSchedule: every b_k must be positive");
    }
    require(std::isfinite(reference_tau) && reference_tau > 0.0,
            "RateSchedule: reference_tau must be positive");
}

RateSchedule RateSchedule::from_rates(std::span<const double> phi, std::span<const double> tau_k,
                                      double reference_tau) {
    require(phi.size() == tau_k.size(), "RateSchedule: phi and tau_k lengths differ");
    require(std::isfinite(reference_tau) && reference_tau > 0.0,
            "RateSchedule: reference_tau must be positive");
    RateSchedule schedule;
    schedule.reference_tau = reference_tau;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        schedule.b.push_back(phi[k] * tau_k[k] / reference_tau);
    }
    schedule.validate();
    return schedule;
}

RateSchedule RateSchedule::uniform(int n_steps, double value) {
    require(n_steps >= 1, "n_steps must be >= 1");
    RateSchedule schedule{std::vector<double>(static_cast<std::size_t>(n_steps), value), 1.0};
    schedule.validate();
    return schedule;
}

void DiscreteMeasure::validate() const {
    require(!locations.empty(), "DiscreteMeasure: no atoms");
    require(locations.size() == weights.size(), "DiscreteMeasure: size mismatch");
    numerics::CompensatedSum<double> total;
    for (std::size_t i = 0; i < locations.size(); ++i) {
        require(std::isfinite(locations[i]) && locations[i] > 0.0,
                "DiscreteMeasure: locations must be positive");
        require(std::isfinite(weights[i]) && weights[i] >= 0.0,
                "DiscreteMeasure: weights must be nonnegative");
        total += weights[i];
    }
    require(std::abs(total.value() - 1.0) <= 1e-9, "DiscreteMeasure: weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::empirical(const RateSchedule& schedule) {
    schedule.validate();
    const double w = 1.0 / static_cast<double>(schedule.b.size());
    return {schedule.b, std::vector<double>(schedule.b.size(), w)};
}

double log_response_prob_general(const RateSchedule& schedule, double tau) {
    schedule.validate();
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    numerics::CompensatedSum<double> sum;
    for (double bk : schedule.b) {
        sum += -std::log1p(1.0 / (bk * tau));
    }
    return sum.value();
}

double response_prob_general(const RateSchedule& schedule, double tau) {
    return std::exp(log_response_prob_general(schedule, tau));
}

double critical_tau_general(const RateSchedule& schedule, double log_trials) {
    schedule.validate();
    require(std::isfinite(log_trials) && log_trials > 0.0, "critical_tau_general: need log M > 0");
    const double root = bisect_increasing(
        [&](double u) { return log_response_prob_general(schedule, std::exp(u)) + log_trials; },
        kLogTauLow, kLogTauHigh, "critical_tau_general");
    return std::exp(root);
}

double limit_critical_tau_general(const DiscreteMeasure& measure, double b) {
    measure.validate();
    require(std::isfinite(b) && b > 0.0, "b must be positive");
    const auto f = [&](double u) {
        const double t = std::exp(u);
        numerics::CompensatedSum<double> sum;
        for (std::size_t i = 0; i < measure.locations.size(); ++i) {
            sum += -measure.weights[i] * std::log1p(1.0 / (measure.locations[i] * t));
        }
        return sum.value() + b;
    };
    return std::exp(bisect_increasing(f, kLimitLogLow, kLimitLogHigh,
                                      "limit_critical_tau_general"));
}

GeneralLimit limit_response_general(double xi, const DiscreteMeasure& measure, double b) {
    require(std::isfinite(xi), "xi must be finite");
    const double t_bar = limit_critical_tau_general(measure, b);
    numerics::CompensatedSum<double> d;
    for (std::size_t i = 0; i < measure.locations.size(); ++i) {
        d += measure.weights[i] / (1.0 + t_bar * measure.locations[i]);
    }
    return {-std::expm1(-std::exp(xi)), t_bar, d.value()};
}

double rescaling_factor(const RateSchedule& schedule, double tau) {
    schedule.validate();
    require(std::isfinite(tau) && tau >= 0.0, "tau must be finite and >= 0");
    numerics::CompensatedSum<double> sum;
    for (double bk : schedule.b) {
        sum += 1.0 / (1.0 + tau * bk);
    }
    return sum.value() / static_cast<double>(schedule.b.size());
}

double finite_response_general(double xi, const RateSchedule& schedule, double log_trials) {
    require(std::isfinite(xi), "xi must be finite");
    const double tau_c = critical_tau_general(schedule, log_trials);
    const double d = rescaling_factor(schedule, tau_c);
    const double tau = tau_c * (1.0 + xi / (static_cast<double>(schedule.n_steps()) * d));
    if (tau <= 0.0) {
        return 0.0;
    }
    return log1m_pow(log_response_prob_general(schedule, tau), log_trials);
}

}  // namespace proofread::general
