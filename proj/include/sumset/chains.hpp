#pragma once

/**
 * @file chains.hpp
 * @brief Chain-satisfaction probabilities a_k and their spectral constants.
 *
 * a_k is the probability that a Bernoulli(p) bit string of length k has no two
 * adjacent ones. It obeys
 *
 *   a_0 = a_1 = 1,   a_k = (1-p) a_{k-1} + p(1-p) a_{k-2},
 *
 * whose characteristic roots are
 *
 *   lambda_{1,2} = (1 - p +- sqrt((1-p)(1+3p))) / 2,
 *
 * giving the Binet form a_k = C1 lambda1^k + C2 lambda2^k with
 * C1 = (1-lambda2)/(lambda1-lambda2), C2 = -(1-lambda1)/(lambda1-lambda2).
 *
 * The complement b_k = 1 - a_k obeys the same recurrence plus a constant p^2
 * source term, so it too is a sum of positive terms. Tables carry both
 * sequences; 1 - a_k for small p is read from b_k rather than by subtraction.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sumset {

class ChainProbTable {
public:
    /// a_0..a_K (and complements). DomainError unless 0 < p < 1 and K >= 0.
    ChainProbTable(double p, std::int64_t max_k);

    double p() const noexcept { return p_; }
    std::int64_t max_k() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }

    /// a_k; throws DomainError when k is negative or beyond max_k().
    double at(std::int64_t k) const;
    /// 1 - a_k.
    double complement(std::int64_t k) const;

    /// Grows the table so that max_k() >= k.
    void extend_to(std::int64_t k);

    const std::vector<double>& values() const noexcept { return values_; }

private:
    double p_;
    std::vector<double> values_;
    std::vector<double> complements_;
};

inline ChainProbTable chain_prob_table(double p, std::int64_t max_k) { return ChainProbTable(p, max_k); }

struct SpectralConstants {
    double lambda1;
    double lambda2;
    double c1;
    double c2;
    double alpha;        ///< log(1/sqrt(1-p^2))
    double alpha_prime;  ///< log(1/lambda1)
};

SpectralConstants spectral_constants(double p);

/// C1 lambda1^k + C2 lambda2^k.
double chain_prob_closed(double p, std::int64_t k);

}  // namespace sumset
