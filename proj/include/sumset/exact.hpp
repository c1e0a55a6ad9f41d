#pragma once

/**
 * @file exact.hpp
 * @brief Closed-form single-element inclusion probabilities and first moments.
 *
 * For 0 <= n <= N,
 *   P(n in A+A) = 1 - (1-p^2)^{(n+1)/2}       n odd
 *               = 1 - (1-p)(1-p^2)^{n/2}       n even
 * and for N < n <= 2N the same expression in 2N-n.
 *
 * Summing the complements gives E[Y] and E[W] in closed form; both parity
 * branches of N are written out explicitly.
 */

#include <cstdint>

#include "sumset/model.hpp"

namespace sumset {

/// base^exponent. Repeated squaring for exponent <= kIntPowThreshold, exp/log above.
double power(double base, std::int64_t exponent);
inline constexpr std::int64_t kIntPowThreshold = 4096;

/// P(n in A+A) for 0 <= n <= 2N. DomainError when n is outside that range.
double inclusion_prob(std::int64_t n, const Params& params);

/// 1 - inclusion_prob, evaluated without cancellation.
double missing_prob(std::int64_t n, const Params& params);

/// E[Y] at finite N.
double expected_missing_left(const Params& params);
/// lim_{N->inf} E[Y] = 2/p^2 - 1/p - 1.
double expected_missing_left_limit(double p);

/// E[W] at finite N.
double expected_missing_total(const Params& params);
/// lim_{N->inf} E[W] = 4/p^2 - 2/p - 2.
double expected_missing_total_limit(double p);

/// (2/p^2)(1-p^2)^{N/4}: bounds E[Y - Y~], E[Z - Z~] and P(Y != Y~).
double fringe_truncation_bound(const Params& params);

/// (8/p^2)(1-p^2)^{N/4}: bounds |P(W=m) - (P_Y * P_Z)(m)| for every m.
double convolution_discrepancy_bound(const Params& params);

}  // namespace sumset
