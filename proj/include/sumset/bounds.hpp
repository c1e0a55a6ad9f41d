#pragma once

/**
 * @file bounds.hpp
 * @brief Moment and tail bounds for Y, the number of summands missing from [0, N].
 *
 * With alpha = log(1/sqrt(1-p^2)):
 *   E[Y^k] <= 2 k! / alpha^k,   M(t) <= 2 / (1 - t/alpha)  (|t| < alpha),
 *   P(Y >= n) <= 2 alpha n e^{1 - alpha n}                  (n > 1/alpha).
 *
 * With lambda1 the dominant chain root and alpha' = log(1/lambda1):
 *   E[Y^k] <= mu + 2 k! / (lambda1 alpha'^k),  mu = 2/p^2 - 1/p - 1,
 *   P(Y >= n) <= mu e^{-(n-1)(alpha' - 1/n)} + 2 n alpha' e^{1 - n alpha'} / lambda1.
 *
 * Lower bound: if 0..n/2 are all absent from A then 0..n are absent from A+A,
 * so P(Y >= n) >= (1-p)^{n/2+1} for even n.
 */

#include <cstdint>

namespace sumset {

enum class Clamp { yes, no };

/// Exponent used for the lower tail bound.
enum class LowerBoundVariant {
    rigorous,   ///< (1-p)^{n/2+1}: n/2+1 independent absences
    published,  ///< (1-p)^{n/2}
};

/// 2 k! / alpha^k. DomainError for k < 0; ResourceError if not representable as a double.
double kth_moment_upper(double p, std::int64_t k);

/// mu + 2 k! / (lambda1 alpha'^k). DomainError for k < 1.
double kth_moment_upper_improved(double p, std::int64_t k);

/// 2 / (1 - t/alpha) for |t| < alpha.
double mgf_upper(double p, double t);

/// Chernoff tail bound; 1 when n <= 1/alpha.
double tail_upper_chernoff(double p, std::int64_t n, Clamp clamp = Clamp::yes);

/// Tail bound from the improved moment bound; 1 when n <= 1/alpha'.
double tail_upper_improved(double p, std::int64_t n, Clamp clamp = Clamp::yes);

/// DomainError for odd or negative n.
double tail_lower(double p, std::int64_t n, LowerBoundVariant variant = LowerBoundVariant::rigorous);

}  // namespace sumset
