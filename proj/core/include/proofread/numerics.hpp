#pragma once

#include <complex>
#include <cstdint>
#include <functional>

namespace proofread::numerics {

/// Neumaier-compensated running sum.
template <typename Real = double>
class CompensatedSum {
public:
    void add(Real value) {
        const Real t = sum_ + value;
        if (abs_(sum_) >= abs_(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(Real value) {
        add(value);
        return *this;
    }
    [[nodiscard]] Real value() const { return sum_ + comp_; }

private:
    static Real abs_(Real v) { return v < Real(0) ? -v : v; }
    Real sum_{0};
    Real comp_{0};
};

/// log(1 + u) for complex u, accurate when |u| is small.
std::complex<double> log1p(std::complex<double> u);

/// exp(w) - 1 for complex w, accurate when |w| is small.
std::complex<double> expm1(std::complex<double> w);

/// ln C(n, k) via lgamma; exact for small arguments up to rounding.
double log_binomial(double n, double k);

/// ln(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

/// Composite Simpson rule on [lo, hi] with an even number of panels.
double simpson(const std::function<double(double)>& f, double lo, double hi,
               std::int64_t panels);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace proofread::numerics
