#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end. All output is CSV with a header row except
 * `verify`, which prints one report line per check.
 *
 * Exit codes: 0 success, 1 domain or computation error, 2 usage error,
 * 3 budget exceeded.
 */

#include <iosfwd>

namespace sumset {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumset
