#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace proofread::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 20240611;
    /// Monte Carlo workers; 0 uses every hardware thread.
    unsigned workers = 0;
    /// Restrict to these ids (empty runs everything).
    std::set<int> only;
    /// Called after each criterion finishes.
    std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 14;

std::vector<CriterionResult> run_all(const SuiteOptions& options);

/// "PASS  01 name  (1.23 s)  detail"
std::string format_line(const CriterionResult& result);

}  // namespace proofread::acceptance
