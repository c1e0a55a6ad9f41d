#include "sumset/series.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "sumset/chains.hpp"
#include "sumset/errors.hpp"
#include "sumset/exact.hpp"
#include "sumset/orbits.hpp"

namespace sumset {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

double floor_geometric_sum(double alpha, double beta, std::int64_t k, std::int64_t l) {
    if (!(std::abs(alpha) < 1.0) || !(std::abs(beta) < 1.0)) {
        throw DomainError("floor-geometric sum needs |alpha| < 1 and |beta| < 1");
    }
    if (l < 1 || k < 0 || k >= l) {
        throw DomainError("floor-geometric sum needs 0 <= k < l");
    }
    const double ab = alpha * beta;
    const double inner = power(alpha, k + 1) * power(beta, k) * (1.0 - beta) / (1.0 - power(alpha, l) * power(beta, l - 1));
    return (1.0 + inner) / (1.0 - ab);
}

WedgeConstants wedge_constants(double p, std::int64_t l) {
    if (l < 1) {
        throw DomainError("wedge index l must be >= 1");
    }
    const ChainProbTable table(p, 2 * l + 2);
    const double a_short = table.at(2 * l);
    const double a_long = table.at(2 * l + 2);
    const double log_short = std::log(a_short);
    const double log_long = std::log(a_long);
    const auto ld = static_cast<double>(l);
    return WedgeConstants{std::exp(ld * log_short - (ld - 1.0) * log_long), std::exp(ld * log_long - (ld + 1.0) * log_short)};
}

std::int64_t wedge_boundary(std::int64_t m, std::int64_t l_prime) {
    if (m < 0 || l_prime < 1) {
        throw DomainError("wedge boundary needs m >= 0 and l' >= 1");
    }
    return ((m + 1) * (l_prime - 1)) / l_prime;
}

namespace {

// Streams (a_k, 1 - a_k) forward through the chain recurrence.
struct ChainCursor {
    double q;
    double pq;
    double p2;
    double a_prev, a_cur;
    double b_prev, b_cur;

    explicit ChainCursor(double p) : q(1.0 - p), pq(p * (1.0 - p)), p2(p * p), a_prev(1.0), a_cur(1.0), b_prev(0.0), b_cur(0.0) {}

    void step() noexcept {
        const double a_next = q * a_cur + pq * a_prev;
        const double b_next = q * b_cur + pq * b_prev + p2;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
    }
};

// Visits T_1, T_2, ... until the visitor returns false.
template <class Visitor>
void for_each_wedge_term(double p, Visitor&& visit) {
    const double q = 1.0 - p;
    // Both cursors start at index 1 (a_prev = a_0, a_cur = a_1).
    ChainCursor slow(p);  // index l
    ChainCursor fast(p);  // index 2l after the first step of each iteration
    for (std::int64_t l = 1;; ++l) {
        fast.step();  // index 2l
        ChainCursor ahead = fast;
        ahead.step();
        ahead.step();  // index 2l+2
        const double a_l = slow.a_cur;
        const double a_lm1 = slow.a_prev;
        const double a_2l = fast.a_cur;
        const double num = a_2l + q * a_lm1 + q * a_l * a_2l + q * q * a_l * a_lm1;
        const double term = num / (ahead.b_cur * fast.b_cur);
        if (!visit(l, term)) return;
        slow.step();
        fast.step();  // index 2l+1; the next iteration's first step lands on 2l+2
    }
}

// Bound on sum_{l > terms} T_l.
double wedge_tail_majorant(const SpectralConstants& s, double p, std::int64_t terms) {
    const double log_l1 = std::log(s.lambda1);
    const double one_minus_l1 = p * p / (1.0 - s.lambda2);
    const auto big_l = static_cast<double>(terms);
    const double denom = -std::expm1((2.0 * big_l + 3.0) * log_l1) * -std::expm1((2.0 * big_l + 1.0) * log_l1);
    return 4.0 * std::exp((big_l - 1.0) * log_l1) / (one_minus_l1 * denom);
}

}  // namespace

SeriesResult wedge_series(double p, double tol, std::int64_t max_terms) {
    require_probability(p);
    if (!(tol > 0.0)) {
        throw DomainError("series tolerance must be positive");
    }
    const SpectralConstants s = spectral_constants(p);
    CompensatedSum sum;
    SeriesResult result;
    bool converged = false;
    for_each_wedge_term(p, [&](std::int64_t l, double term) {
        sum.add(term);
        const double tail = wedge_tail_majorant(s, p, l);
        if (tail < tol) {
            result = SeriesResult{sum.value(), l, tail};
            converged = true;
            return false;
        }
        return l < max_terms;
    });
    if (!converged) {
        throw ResourceError("wedge series did not reach tolerance within " + std::to_string(max_terms) + " terms");
    }
    return result;
}

SeriesResult second_moment_limit(double p, double tol, std::int64_t max_terms) {
    if (!(tol > 0.0)) {
        throw DomainError("series tolerance must be positive");
    }
    const SeriesResult w = wedge_series(p, tol / 2.0, max_terms);
    return SeriesResult{2.0 * w.value - expected_missing_left_limit(p), w.truncation_l, 2.0 * w.remainder_bound};
}

double second_moment_partial(double p, std::int64_t terms) {
    require_probability(p);
    if (terms < 1) {
        throw DomainError("partial sum length L must be >= 1");
    }
    CompensatedSum sum;
    for_each_wedge_term(p, [&](std::int64_t l, double term) {
        sum.add(term);
        return l < terms;
    });
    const double p2 = p * p;
    return p2 * p2 * sum.value();
}

double leading_order_approx(double p) {
    require_probability(p);
    const double p2 = p * p;
    return 4.0 / (p2 * p2) - 2.0 / p2 + 1.0 / p + 1.0;
}

double tail_remainder_bound(double p, std::int64_t n_max) {
    require_probability(p);
    if (n_max < 0) {
        throw DomainError("N must be nonnegative");
    }
    const double q = std::sqrt((1.0 - p) * (1.0 + p));
    const double one_minus_q = p * p / (1.0 + q);
    // sum_{j>=J} (2j-1) q^j with J = N+2.
    const auto j = static_cast<double>(n_max + 2);
    const double qj = power(q, n_max + 2);
    return qj * ((2.0 * j - 1.0) * one_minus_q + 2.0 * q) / (one_minus_q * one_minus_q);
}

std::int64_t n_for_tolerance(double p, double eps) {
    require_probability(p);
    if (!(eps > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    const double p2 = p * p;
    const double raw = 8.0 * std::abs(std::log(p)) / p2 + 2.0 * std::abs(std::log(eps / 8.0)) / p2;
    return static_cast<std::int64_t>(std::ceil(raw));
}

VarianceLimit variance_limit(double p, double tol) {
    const double second = second_moment_limit(p, tol).value;
    const double mean = expected_missing_left_limit(p);
    const double variance = second - mean * mean;
    return VarianceLimit{variance, variance / (mean * mean)};
}

double total_second_moment_limit(double p, double tol) {
    const double second = second_moment_limit(p, tol).value;
    const double mean = expected_missing_left_limit(p);
    return 2.0 * second + 2.0 * mean * mean;
}

double second_moment_double_sum(const Params& params) {
    const std::int64_t big_n = params.n_max();
    ChainProbTable table(params.p(), 2 * big_n + 4);
    CompensatedSum pairs;
    for (std::int64_t m = 1; m <= big_n; ++m) {
        for (std::int64_t n = 0; n < m; ++n) {
            pairs.add(pair_missing_prob(m, n, table));
        }
    }
    return expected_missing_left(params) + 2.0 * pairs.value();
}

}  // namespace sumset
