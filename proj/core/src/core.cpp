#include "proofread/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "proofread/numerics.hpp"

namespace proofread {

namespace {

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

// ModelParams ---------------------------------------------------------------

ModelParams::ModelParams(double tau, int n_steps, double log_trials, double log_ligands)
    : tau_(tau), n_steps_(n_steps), log_trials_(log_trials), log_ligands_(log_ligands) {
    require(std::isfinite(tau) && tau > 0.0, "ModelParams: tau must be positive and finite");
    require(n_steps >= 1, "ModelParams: n_steps must be >= 1");
    require(std::isfinite(log_trials) && log_trials >= 0.0,
            "ModelParams: log_trials must be finite and >= 0");
    require(std::isfinite(log_ligands) && log_ligands >= 0.0,
            "ModelParams: log_ligands must be finite and >= 0");
}

ModelParams ModelParams::from_energy(double binding_energy, int n_steps, double log_trials,
                                     double log_ligands) {
    require(std::isfinite(binding_energy), "ModelParams: binding energy must be finite");
    return ModelParams(std::exp(binding_energy), n_steps, log_trials, log_ligands);
}

ModelParams ModelParams::with_trials(double tau, int n_steps, std::int64_t trials,
                                     std::int64_t ligands) {
    require(trials >= 1, "ModelParams: trials must be >= 1");
    require(ligands >= 1, "ModelParams: ligands must be >= 1");
    return ModelParams(tau, n_steps, std::log(static_cast<double>(trials)),
                       std::log(static_cast<double>(ligands)));
}

double ModelParams::binding_energy() const { return std::log(tau_); }

std::int64_t ModelParams::integer_trials() const { return integer_from_log(log_trials_); }

std::int64_t integer_from_log(double log_value) {
    require(std::isfinite(log_value) && log_value >= 0.0,
            "integer_from_log: argument must be finite and >= 0");
    require(log_value < std::log(9.0e18), "integer_from_log: count exceeds int64 range");
    const double value = std::exp(log_value);
    const double nearest = std::round(value);
    if (std::abs(value - nearest) <= 1e-9 * value) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::floor(value));
}

// RegimeSpec ----------------------------------------------------------------

void validate(const RegimeSpec& spec) {
    std::visit(Overloaded{
                   [](const regime::MConstant& r) {
                       require(r.trials > 1, "MConstant regime requires M > 1");
                   },
                   [](const regime::LogMOrderN& r) {
                       require(std::isfinite(r.b) && r.b > 0.0,
                               "LogMOrderN regime requires b > 0");
                   },
                   [](const auto&) {},
               },
               spec);
}

std::string to_string(const RegimeSpec& spec) {
    return std::visit(Overloaded{
                          [](const regime::MEqualsOne&) { return std::string("M=1"); },
                          [](const regime::MConstant& r) {
                              return "M=" + std::to_string(r.trials);
                          },
                          [](const regime::LogMSubN&) { return std::string("logM<<N"); },
                          [](const regime::LogMOrderN& r) {
                              std::ostringstream os;
                              os << "logM~" << r.b << "N";
                              return os.str();
                          },
                          [](const regime::LogMSuperN&) { return std::string("logM>>N"); },
                      },
                      spec);
}

bool trials_diverge(const RegimeSpec& spec) {
    return std::holds_alternative<regime::LogMSubN>(spec) ||
           std::holds_alternative<regime::LogMOrderN>(spec) ||
           std::holds_alternative<regime::LogMSuperN>(spec);
}

// DiscretePmf ---------------------------------------------------------------

DiscretePmf::DiscretePmf(std::int64_t offset, std::vector<double> masses)
    : offset_(offset), masses_(std::move(masses)) {
    require(!masses_.empty(), "DiscretePmf: empty support");
    numerics::CompensatedSum<double> sum;
    for (double m : masses_) {
        require(std::isfinite(m) && m >= 0.0, "DiscretePmf: masses must be finite and >= 0");
        sum += m;
    }
    if (std::abs(sum.value() - 1.0) > kNormalizationTolerance) {
        std::ostringstream os;
        os << "DiscretePmf: masses sum to " << sum.value() << ", not 1";
        throw DomainError(os.str());
    }
}

double DiscretePmf::operator()(std::int64_t k) const {
    if (k < offset_ || k > max_support()) {
        return 0.0;
    }
    return masses_[static_cast<std::size_t>(k - offset_)];
}

double DiscretePmf::cdf(std::int64_t k) const {
    if (k < offset_) {
        return 0.0;
    }
    if (k >= max_support()) {
        return total();
    }
    numerics::CompensatedSum<double> sum;
    for (std::int64_t i = offset_; i <= k; ++i) {
        sum += masses_[static_cast<std::size_t>(i - offset_)];
    }
    return sum.value();
}

double DiscretePmf::total() const {
    numerics::CompensatedSum<double> sum;
    for (double m : masses_) sum += m;
    return sum.value();
}

double DiscretePmf::mean() const {
    numerics::CompensatedSum<double> sum;
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        sum += masses_[i] * static_cast<double>(offset_ + static_cast<std::int64_t>(i));
    }
    return sum.value();
}

double DiscretePmf::variance() const {
    const double mu = mean();
    numerics::CompensatedSum<double> sum;
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        const double d = static_cast<double>(offset_ + static_cast<std::int64_t>(i)) - mu;
        sum += masses_[i] * d * d;
    }
    return sum.value();
}

double total_variation(const DiscretePmf& a, const DiscretePmf& b) {
    const std::int64_t lo = std::min(a.min_support(), b.min_support());
    const std::int64_t hi = std::max(a.max_support(), b.max_support());
    numerics::CompensatedSum<double> sum;
    for (std::int64_t k = lo; k <= hi; ++k) {
        sum += std::abs(a(k) - b(k));
    }
    return 0.5 * sum.value();
}

double total_variation(const DiscretePmf& pmf, std::span<const std::uint64_t> counts,
                       std::int64_t offset) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    require(n > 0, "total_variation: empty histogram");
    const auto hist_hi = offset + static_cast<std::int64_t>(counts.size()) - 1;
    const std::int64_t lo = std::min(pmf.min_support(), offset);
    const std::int64_t hi = std::max(pmf.max_support(), hist_hi);
    numerics::CompensatedSum<double> sum;
    for (std::int64_t k = lo; k <= hi; ++k) {
        double freq = 0.0;
        if (k >= offset && k <= hist_hi) {
            freq = static_cast<double>(counts[static_cast<std::size_t>(k - offset)]) /
                   static_cast<double>(n);
        }
        sum += std::abs(pmf(k) - freq);
    }
    return 0.5 * sum.value();
}

double ks_distance_to_normal(const DiscretePmf& pmf, double mean, double std_dev) {
    require(std_dev > 0.0, "ks_distance_to_normal: std_dev must be positive");
    double below = 0.0;
    double sup = 0.0;
    numerics::CompensatedSum<double> running;
    for (std::int64_t k = pmf.min_support(); k <= pmf.max_support(); ++k) {
        const double phi = numerics::normal_cdf((static_cast<double>(k) - mean) / std_dev);
        running += pmf(k);
        const double at = running.value();
        sup = std::max({sup, std::abs(below - phi), std::abs(at - phi)});
        below = at;
    }
    return sup;
}

// MixedMeasure --------------------------------------------------------------

MixedMeasure::MixedMeasure(std::vector<Atom> atoms, std::vector<Segment> segments)
    : atoms_(std::move(atoms)), segments_(std::move(segments)) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    std::sort(segments_.begin(), segments_.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    for (const auto& atom : atoms_) {
        require(std::isfinite(atom.location) && std::isfinite(atom.mass) && atom.mass >= 0.0,
                "MixedMeasure: atoms need finite location and nonnegative mass");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& seg = segments_[i];
        require(seg.density != nullptr, "MixedMeasure: segment without density");
        require(seg.lo < seg.hi, "MixedMeasure: empty segment");
        if (i > 0) {
            require(segments_[i - 1].hi <= seg.lo, "MixedMeasure: overlapping segments");
        }
        const double h = (seg.hi - seg.lo) / static_cast<double>(kPanelsPerSegment);
        for (std::int64_t j = 0; j < kPanelsPerSegment; ++j) {
            const double value = seg.density(seg.lo + h * static_cast<double>(j));
            if (!(value >= kNegativeSlack)) {
                std::ostringstream os;
                os << "MixedMeasure: density " << value << " at "
                   << seg.lo + h * static_cast<double>(j) << " is negative";
                throw DomainError(os.str());
            }
        }
    }
    const double mass = total_mass();
    if (std::abs(mass - 1.0) > kNormalizationTolerance) {
        std::ostringstream os;
        os << "MixedMeasure: total mass " << mass << " is not 1";
        throw DomainError(os.str());
    }
}

std::vector<double> MixedMeasure::breakpoints() const {
    std::vector<double> points;
    for (const auto& seg : segments_) {
        points.push_back(seg.lo);
        points.push_back(seg.hi);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

double MixedMeasure::density(double x) const {
    for (const auto& seg : segments_) {
        if (x >= seg.lo && x < seg.hi) {
            return seg.density(x);
        }
    }
    return 0.0;
}

double MixedMeasure::atom_mass() const {
    numerics::CompensatedSum<double> sum;
    for (const auto& atom : atoms_) sum += atom.mass;
    return sum.value();
}

double MixedMeasure::continuous_mass() const {
    numerics::CompensatedSum<double> sum;
    for (const auto& seg : segments_) {
        sum += numerics::simpson(seg.density, seg.lo, seg.hi, kPanelsPerSegment);
    }
    return sum.value();
}

double MixedMeasure::total_mass() const { return atom_mass() + continuous_mass(); }

double MixedMeasure::cdf(double x) const {
    numerics::CompensatedSum<double> sum;
    for (const auto& atom : atoms_) {
        if (atom.location <= x) sum += atom.mass;
    }
    for (const auto& seg : segments_) {
        if (x <= seg.lo) break;
        const double upper = std::min(x, seg.hi);
        sum += numerics::simpson(seg.density, seg.lo, upper, kPanelsPerSegment);
    }
    return sum.value();
}

// Log-space primitives ------------------------------------------------------

double log1m_pow(double log_p, double log_count) {
    require(std::isfinite(log_p) && std::isfinite(log_count),
            "log1m_pow: arguments must be finite");
    require(log_p <= 0.0, "log1m_pow: ln p must be <= 0");
    require(log_count >= 0.0, "log1m_pow: ln M must be >= 0");
    if (log_count == 0.0) {
        return std::exp(log_p);
    }
    if (log_p == 0.0) {
        return 1.0;
    }
    // ln(-ln(1 - p)), the log of the per-trial hazard.
    double log_hazard = 0.0;
    if (log_p < -20.0) {
        const double p = std::exp(log_p);
        log_hazard = log_p + std::log1p(p / 2.0 + p * p / 3.0);
    } else if (log_p < -std::log(2.0)) {
        log_hazard = std::log(-std::log1p(-std::exp(log_p)));
    } else {
        log_hazard = std::log(-std::log(-std::expm1(log_p)));
    }
    const double exponent = log_count + log_hazard;
    if (exponent > 709.0) {
        return 1.0;
    }
    return -std::expm1(-std::exp(exponent));
}

double log_advance_probability(double tau) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive and finite");
    return -std::log1p(1.0 / tau);
}

}  // namespace proofread
