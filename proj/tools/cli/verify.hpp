#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "kelly/sortino.hpp"

namespace kelly::cli {

using ClosedFormFn = std::function<double(sortino::AffineWeight, int alpha, int T, double p)>;

struct VerifyOptions {
    int trials = 1000;        ///< closed-form vs direct tuples
    int omega_trials = 100;   ///< Omega-identity tuples
    std::uint64_t seed = 20190828;
    /// Evaluator under test; defaults to sortino::weighted_sum_closed.
    ClosedFormFn closed_form;
};

struct CheckResult {
    std::string name;
    std::string tolerance;
    long long passed = 0;
    long long total = 0;
    std::string first_failure;  ///< empty when everything passed

    [[nodiscard]] bool ok() const noexcept { return passed == total; }
};

/// Closed-form equivalence battery, Omega-identity checks and special
/// function analytic checks.
[[nodiscard]] std::vector<CheckResult> run_verify(const VerifyOptions& options);

/// Prints one row per check; returns true iff all passed.
bool print_verify_table(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace kelly::cli
