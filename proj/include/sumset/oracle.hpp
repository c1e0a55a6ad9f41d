#pragma once

/**
 * @file oracle.hpp
 * @brief Ground truth by exhaustive enumeration of all 2^(N+1) subsets.
 *
 * Each subset is weighted p^|A| (1-p)^(N+1-|A|). Enumeration first counts
 * subsets per (|A|, outcome) in integers and only then applies weights, so
 * results do not depend on how the subset range is split across workers.
 */

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sumset/model.hpp"

namespace sumset {

inline constexpr std::int64_t kOracleMaxN = 22;

struct ExactDistribution {
    Params params;
    std::vector<double> y;        ///< support 0..N+1
    std::vector<double> z;        ///< support 0..N
    std::vector<double> w;        ///< support 0..2N+1
    std::vector<double> y_tilde;  ///< support 0..floor(N/2)+1
    std::vector<double> z_tilde;  ///< support 0..2N-floor(3N/2)
    std::vector<std::vector<double>> joint_tilde;  ///< [y_tilde][z_tilde]

    const std::vector<double>& pmf(Variable v) const;
};

/// ResourceError when N > kOracleMaxN. workers > 1 splits the subset range across threads.
ExactDistribution exact_distribution(const Params& params, unsigned workers = 1);

/// Exact P(s not in A+A) for every s in [0, 2N]. ResourceError when N > kOracleMaxN.
std::vector<double> exact_missing_probs(const Params& params);

/// Exact P(m, n not in A+A) by enumerating subsets of {0,...,m}.
/// DomainError unless 0 <= n < m <= N; ResourceError when m > kOracleMaxN.
double exact_pair_missing(std::int64_t m, std::int64_t n, const Params& params);

/// sum_v v^k pmf(v).
double exact_moment(const ExactDistribution& dist, Variable v, int k);
double exact_moment(const Params& params, Variable v, int k);

/// "variable,value,probability" rows for every variable.
void write_pmf_csv(std::ostream& out, const ExactDistribution& dist);

}  // namespace sumset
