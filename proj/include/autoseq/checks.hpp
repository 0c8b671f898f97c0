#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace autoseq {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckSuiteReport {
    std::vector<CheckResult> results;
    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

/// Cross-module invariant suite: exponential-sum method agreement, kernel
/// closure sizes, frequency row sums, normalization idempotence, construction
/// fidelity, exact partial sums, and spot checks of the analytic bounds.
CheckSuiteReport run_invariant_suite(std::uint64_t seed);

}  // namespace autoseq
