#include "proofread/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proofread::numerics {

std::complex<double> log1p(std::complex<double> u) {
    const double a = u.real();
    const double b = u.imag();
    // |1 + u|^2 - 1 = a (2 + a) + b^2
    const double re = 0.5 * std::log1p(a * (2.0 + a) + b * b);
    const double im = std::atan2(b, 1.0 + a);
    return {re, im};
}

std::complex<double> expm1(std::complex<double> w) {
    const double x = w.real();
    const double y = w.imag();
    const double half_sin = std::sin(0.5 * y);
    const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
    const double im = std::exp(x) * std::sin(y);
    return {re, im};
}

double log_binomial(double n, double k) {
    if (k < 0 || k > n) {
        throw std::domain_error("log_binomial: k outside [0, n]");
    }
    if (k == 0 || k == n) {
        return 0.0;
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_add_exp(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double simpson(const std::function<double(double)>& f, double lo, double hi,
               std::int64_t panels) {
    if (panels < 2 || panels % 2 != 0) {
        throw std::invalid_argument("simpson: panel count must be even and >= 2");
    }
    if (hi == lo) {
        return 0.0;
    }
    const double h = (hi - lo) / static_cast<double>(panels);
    CompensatedSum<double> odd;
    CompensatedSum<double> even;
    for (std::int64_t i = 1; i < panels; ++i) {
        const double x = lo + h * static_cast<double>(i);
        if (i % 2 == 1) {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    return h / 3.0 * (f(lo) + f(hi) + 4.0 * odd.value() + 2.0 * even.value());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace proofread::numerics
