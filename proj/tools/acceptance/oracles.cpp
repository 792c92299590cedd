#include "oracles.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace proofread::oracles {

namespace {

using Mp = boost::multiprecision::cpp_bin_float_50;

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double log1m_pow_mp(double log_p, double log_count) {
    const Mp p = boost::multiprecision::exp(Mp(log_p));
    const Mp m = boost::multiprecision::exp(Mp(log_count));
    const Mp result = Mp(1) - boost::multiprecision::exp(m * boost::multiprecision::log1p(-p));
    return static_cast<double>(result);
}

double critical_residual_mp(double tau, int n_steps, double log_total) {
    const Mp t(tau);
    const Mp log_value = Mp(log_total) + Mp(n_steps) * boost::multiprecision::log(t / (1 + t));
    return static_cast<double>(boost::multiprecision::expm1(log_value));
}

double general_residual_mp(std::span<const double> b, double tau, double log_trials) {
    Mp log_value(log_trials);
    const Mp t(tau);
    for (double bk : b) {
        const Mp bt = Mp(bk) * t;
        log_value += boost::multiprecision::log(bt / (1 + bt));
    }
    return static_cast<double>(boost::multiprecision::expm1(log_value));
}

std::vector<double> discretize_single_limit(double x, double h) {
    const auto cells = static_cast<std::size_t>(std::llround(1.0 / h));
    if (std::abs(static_cast<double>(cells) * h - 1.0) > 1e-12) {
        throw std::invalid_argument("discretize_single_limit: 1/h must be an integer");
    }
    std::vector<double> masses(cells + 1, 0.0);
    const double u = h / x;
    const double whole = -std::expm1(-u);               // 1 - e^{-u}
    const double first = whole - u * std::exp(-u);      // 1 - e^{-u}(1 + u)
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = static_cast<double>(i) * h;
        const double scale = std::exp(-a / x);
        const double cell_mass = scale * whole;
        const double upper = scale * first / u;
        masses[i] += cell_mass - upper;
        masses[i + 1] += upper;
    }
    masses[cells] += std::exp(-1.0 / x);
    return masses;
}

std::vector<double> self_convolve(const std::vector<double>& masses, int copies) {
    if (copies < 1) throw std::invalid_argument("self_convolve: copies must be >= 1");
    std::vector<double> running = masses;
    for (int c = 1; c < copies; ++c) {
        std::vector<double> next(running.size() + masses.size() - 1, 0.0);
        for (std::size_t i = 0; i < running.size(); ++i) {
            const double a = running[i];
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < masses.size(); ++j) {
                next[i + j] += a * masses[j];
            }
        }
        running.swap(next);
    }
    return running;
}

std::vector<double> dft_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& g, int power, int samples,
    int count) {
    std::vector<std::complex<double>> values(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / samples;
        values[static_cast<std::size_t>(j)] = std::pow(g(std::polar(1.0, angle)), power);
    }
    std::vector<double> coefficients(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < samples; ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) * k / samples;
            acc += values[static_cast<std::size_t>(j)] * std::polar(1.0, angle);
        }
        coefficients[static_cast<std::size_t>(k)] = acc.real() / samples;
    }
    return coefficients;
}

double ks_to_uniform(std::vector<double> sample) {
    if (sample.empty()) throw std::invalid_argument("ks_to_uniform: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = std::clamp(sample[i], 0.0, 1.0);
        sup = std::max({sup, std::abs(static_cast<double>(i + 1) / n - f),
                        std::abs(f - static_cast<double>(i) / n)});
    }
    return sup;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double sup = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return sup;
}

MeanEstimate sample_mean(std::span<const double> sample) {
    if (sample.size() < 2) throw std::invalid_argument("sample_mean: need two samples");
    const double n = static_cast<double>(sample.size());
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    for (double v : sample) {
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
    }
    return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, lo, hi, fa, fm, fb, whole, tol, 40);
}

}  // namespace proofread::oracles
