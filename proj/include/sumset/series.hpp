#pragma once

/**
 * @file series.hpp
 * @brief Large-N second moment of Y as a single series over twist degree l.
 *
 *   lim E[Y^2] = -(2/p^2 - 1/p - 1) + 2 sum_{l>=1} T_l,
 *
 *   T_l = (a_{2l} + (1-p) a_{l-1} + (1-p) a_l a_{2l} + (1-p)^2 a_l a_{l-1})
 *         / ((1 - a_{2l+2})(1 - a_{2l})).
 *
 * Every T_l is positive. Using a_k <= lambda1^{k-1} the numerator is at most
 * 4 lambda1^{l-2} and the denominator is increasing in l, which gives the
 * geometric tail majorant used for truncation.
 */

#include <cstdint>

#include "sumset/model.hpp"

namespace sumset {

/// Value of a positive series truncated after truncation_l terms; the exact
/// sum lies in [value, value + remainder_bound].
struct SeriesResult {
    double value = 0.0;
    std::int64_t truncation_l = 0;
    double remainder_bound = 0.0;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

/// sum_{n>=0} alpha^n beta^{floor(((l-1)n + k)/l)} in closed form.
/// DomainError unless |alpha| < 1, |beta| < 1 and 0 <= k < l.
double floor_geometric_sum(double alpha, double beta, std::int64_t k, std::int64_t l);

struct WedgeConstants {
    double u;  ///< a_{2l}^l / a_{2l+2}^{l-1}
    double v;  ///< a_{2l+2}^l / a_{2l}^{l+1}
};

WedgeConstants wedge_constants(double p, std::int64_t l);

/// floor((m+1)(l'-1)/l'): smallest n with twist degree >= l' for this m.
std::int64_t wedge_boundary(std::int64_t m, std::int64_t l_prime);

inline constexpr std::int64_t kDefaultMaxTerms = 200'000'000;

/// sum_{l>=1} T_l, truncated once the tail majorant drops below tol.
/// DomainError for tol <= 0; ResourceError if max_terms is reached first.
SeriesResult wedge_series(double p, double tol, std::int64_t max_terms = kDefaultMaxTerms);

/// lim_{N->inf} E[Y^2]; the remainder bound is twice that of wedge_series.
SeriesResult second_moment_limit(double p, double tol, std::int64_t max_terms = kDefaultMaxTerms);

/// f(p, L) = p^4 sum_{l=1}^{L} T_l.
double second_moment_partial(double p, std::int64_t terms);

/// 4/p^4 - 2/p^2 + 1/p + 1.
double leading_order_approx(double p);

/// sum_{n>N} (2n+1) q^{n+1}, q = sqrt(1-p^2): bounds lim E[Y^2] - E[Y^2]_N.
double tail_remainder_bound(double p, std::int64_t n_max);

/// ceil(8|log p|/p^2 + 2|log(eps/8)|/p^2).
std::int64_t n_for_tolerance(double p, double eps);

struct VarianceLimit {
    double variance;
    double ratio;  ///< variance / mean^2
};

VarianceLimit variance_limit(double p, double tol);

/// lim E[W^2] = 2 lim E[Y^2] + 2 (lim E[Y])^2.
double total_second_moment_limit(double p, double tol);

/// E[Y^2] at finite N from indicator pairs: E[Y]_N + 2 sum_{0<=n<m<=N} P(m,n not in A+A).
double second_moment_double_sum(const Params& params);

}  // namespace sumset
