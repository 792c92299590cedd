#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace proofread {

// Error hierarchy. Everything the library throws derives from Error so
// front ends can map failures onto exit codes.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation point too close to a singularity of a closed form.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

/// Input exceeds a documented size cap (desk-scale limits).
struct CapacityError : Error {
    using Error::Error;
};

/// A root finder's bracket does not straddle a sign change.
struct BracketError : Error {
    using Error::Error;
};

/// Model parameters. Trial and ligand counts are carried as natural logs so
/// that regimes with M ~ e^{bN} never overflow.
class ModelParams {
public:
    ModelParams(double tau, int n_steps, double log_trials = 0.0, double log_ligands = 0.0);

    static ModelParams from_energy(double binding_energy, int n_steps, double log_trials = 0.0,
                                   double log_ligands = 0.0);
    static ModelParams with_trials(double tau, int n_steps, std::int64_t trials,
                                   std::int64_t ligands = 1);

    [[nodiscard]] double tau() const { return tau_; }
    [[nodiscard]] int n_steps() const { return n_steps_; }
    [[nodiscard]] double log_trials() const { return log_trials_; }
    [[nodiscard]] double log_ligands() const { return log_ligands_; }

    /// Binding energy E with tau = e^E (units of k_B T).
    [[nodiscard]] double binding_energy() const;

    /// Integer trial count: floor(exp(log_trials)), snapped to the nearest
    /// integer when exp(log_trials) is within 1e-9 relative of it so that
    /// log(16) maps back to 16.
    [[nodiscard]] std::int64_t integer_trials() const;

private:
    double tau_;
    int n_steps_;
    double log_trials_;
    double log_ligands_;
};

/// Floor of exp(log_value) with snapping to nearby integers (see
/// ModelParams::integer_trials).
std::int64_t integer_from_log(double log_value);

/// Growth law of M against N, selecting the asymptotic formulas.
namespace regime {
struct MEqualsOne {};
struct MConstant {
    std::int64_t trials;
};
struct LogMSubN {};
struct LogMOrderN {
    double b;
};
struct LogMSuperN {};
}  // namespace regime

using RegimeSpec = std::variant<regime::MEqualsOne, regime::MConstant, regime::LogMSubN,
                                regime::LogMOrderN, regime::LogMSuperN>;

/// Validates the variant payload (M > 1, b > 0).
void validate(const RegimeSpec& spec);
std::string to_string(const RegimeSpec& spec);

/// True for the regimes in which M -> infinity with N.
bool trials_diverge(const RegimeSpec& spec);

/// Result of one simulated proofreading trial.
struct TrialOutcome {
    bool responded = false;
    int atp_consumed = 0;
    double dwell_time = 0.0;
};

/// Probability mass function on the integers offset, offset+1, ...
class DiscretePmf {
public:
    static constexpr double kNormalizationTolerance = 1e-9;

    DiscretePmf(std::int64_t offset, std::vector<double> masses);

    [[nodiscard]] std::int64_t offset() const { return offset_; }
    [[nodiscard]] std::int64_t min_support() const { return offset_; }
    [[nodiscard]] std::int64_t max_support() const {
        return offset_ + static_cast<std::int64_t>(masses_.size()) - 1;
    }
    [[nodiscard]] std::size_t size() const { return masses_.size(); }
    [[nodiscard]] std::span<const double> masses() const { return masses_; }

    /// Mass at integer k (zero outside the stored support).
    [[nodiscard]] double operator()(std::int64_t k) const;
    /// P(X <= k).
    [[nodiscard]] double cdf(std::int64_t k) const;
    [[nodiscard]] double total() const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double variance() const;

private:
    std::int64_t offset_;
    std::vector<double> masses_;
};

/// Total-variation distance (half the L1 distance) between two pmfs.
double total_variation(const DiscretePmf& a, const DiscretePmf& b);

/// Total-variation distance between a pmf and an empirical histogram whose
/// bin i counts the value offset + i.
double total_variation(const DiscretePmf& pmf, std::span<const std::uint64_t> counts,
                       std::int64_t offset = 0);

/// sup_x |F(x) - Phi((x - mean) / std)| over the lattice support of the pmf,
/// checking both sides of every jump.
double ks_distance_to_normal(const DiscretePmf& pmf, double mean, double std_dev);

/// Probability law made of Dirac atoms plus a piecewise density.
class MixedMeasure {
public:
    static constexpr double kNormalizationTolerance = 1e-6;
    static constexpr double kNegativeSlack = -1e-12;
    /// Simpson panels per density segment.
    static constexpr std::int64_t kPanelsPerSegment = 1 << 10;

    struct Atom {
        double location;
        double mass;
    };
    struct Segment {
        double lo;
        double hi;
        std::function<double(double)> density;
    };

    /// Validates normalization and nonnegativity at every quadrature node.
    MixedMeasure(std::vector<Atom> atoms, std::vector<Segment> segments);

    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
    [[nodiscard]] std::vector<double> breakpoints() const;

    /// Density of the continuous part (0 outside every segment). Segments are
    /// half-open [lo, hi).
    [[nodiscard]] double density(double x) const;
    [[nodiscard]] double atom_mass() const;
    [[nodiscard]] double continuous_mass() const;
    [[nodiscard]] double total_mass() const;
    /// Right-continuous CDF: atoms at locations <= x are included.
    [[nodiscard]] double cdf(double x) const;

private:
    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
};

/// 1 - (1 - p)^M with p = exp(log_p) and M = exp(log_count), evaluated
/// without underflow or cancellation for p down to e^-700 and M up to e^700.
/// Returns p exactly when log_count == 0.
double log1m_pow(double log_p, double log_count);

/// ln(tau / (1 + tau)), the log of one-step advance probability.
double log_advance_probability(double tau);

}  // namespace proofread
