#pragma once

/**
 * @file verify.hpp
 * @brief The ten acceptance checks, grouped into suites.
 *
 * Each check reports the worst observed discrepancy against its pinned
 * tolerance. Work is estimated up front in elementary bit operations
 * (subsets times bits for enumeration, trials times bits for sampling) and
 * compared with a caller-supplied budget before anything runs.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sumset {

enum class Suite { oracle, series, bounds, all };

std::optional<Suite> parse_suite(std::string_view name);
std::vector<int> suite_criteria(Suite suite);

inline constexpr int kCriterionCount = 10;

struct VerifyOptions {
    double budget = 1e10;        ///< elementary-operation cap across the selected checks
    unsigned threads = 0;        ///< Monte Carlo / oracle workers; 0 = hardware concurrency
    std::uint64_t seed = 20250101;
};

struct CheckResult {
    int criterion = 0;
    std::string name;
    std::string tolerance;
    double observed = 0.0;
    bool passed = false;
    bool skipped = false;  ///< not run because the budget would be exceeded
    std::string detail;
    double seconds = 0.0;
};

/// Estimated cost of one check in the units of VerifyOptions::budget.
double criterion_work(int criterion);

/// Runs one check. DomainError for criterion outside 1..kCriterionCount.
CheckResult run_criterion(int criterion, const VerifyOptions& options);

struct VerifyReport {
    std::vector<CheckResult> results;
    bool budget_exceeded = false;

    bool all_passed() const;
};

/// Runs the suite's checks in order, printing each line to progress (if given)
/// as it completes. The first check that would push the total past the budget,
/// and every check after it, is skipped.
VerifyReport run_suite(Suite suite, const VerifyOptions& options, std::ostream* progress = nullptr);

/// One line: status, criterion number, name, tolerance, observed value, detail.
void print_result(std::ostream& out, const CheckResult& result);

}  // namespace sumset
