#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

// Prints one line per criterion and fails if any criterion fails.
int main() {
    proofread::acceptance::SuiteOptions options;
    if (const char* seed = std::getenv("PROOFREAD_SEED")) {
        options.seed = std::stoull(seed);
    }
    options.on_result = [](const proofread::acceptance::CriterionResult& r) {
        std::cout << proofread::acceptance::format_line(r) << std::endl;
    };
    const auto results = proofread::acceptance::run_all(options);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
