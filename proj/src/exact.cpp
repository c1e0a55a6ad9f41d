#include "sumset/exact.hpp"

#include <cmath>
#include <string>

#include "sumset/errors.hpp"

namespace sumset {

double power(double base, std::int64_t exponent) {
    if (exponent < 0) {
        return 1.0 / power(base, -exponent);
    }
    if (exponent > kIntPowThreshold) {
        if (base <= 0.0) return std::pow(base, static_cast<double>(exponent));
        return std::exp(static_cast<double>(exponent) * std::log(base));
    }
    double result = 1.0;
    double b = base;
    auto e = static_cast<std::uint64_t>(exponent);
    while (e != 0) {
        if (e & 1U) result *= b;
        b *= b;
        e >>= 1U;
    }
    return result;
}

namespace {

// Non-inclusion probability of j in [0, N] (left-fringe form).
double left_missing(std::int64_t j, double p) {
    const double one_minus_p2 = (1.0 - p) * (1.0 + p);
    if (j % 2 != 0) {
        return power(one_minus_p2, (j + 1) / 2);
    }
    return (1.0 - p) * power(one_minus_p2, j / 2);
}

}  // namespace

double missing_prob(std::int64_t n, const Params& params) {
    const std::int64_t big_n = params.n_max();
    if (n < 0 || n > 2 * big_n) {
        throw DomainError("summand " + std::to_string(n) + " outside [0, 2N]");
    }
    const std::int64_t j = n <= big_n ? n : 2 * big_n - n;
    return left_missing(j, params.p());
}

double inclusion_prob(std::int64_t n, const Params& params) {
    return 1.0 - missing_prob(n, params);
}

double expected_missing_left_limit(double p) {
    require_probability(p);
    return 2.0 / (p * p) - 1.0 / p - 1.0;
}

double expected_missing_total_limit(double p) {
    require_probability(p);
    return 4.0 / (p * p) - 2.0 / p - 2.0;
}

double expected_missing_left(const Params& params) {
    const double p = params.p();
    const double p2 = p * p;
    const double q = std::sqrt((1.0 - p) * (1.0 + p));
    const std::int64_t n = params.n_max();
    const double qn = power(q, n);
    if (n % 2 == 0) {
        return expected_missing_left_limit(p) - qn * (2.0 - p) * (1.0 - p2) / p2;
    }
    return expected_missing_left_limit(p) - qn * (2.0 - p - p2) * q / p2;
}

// E[W] = E[Y]_N + E[Y]_{N-1}. The even-N coefficient is 4 - 2p - 3p^2 + p^3,
// which reproduces E[W] = 1 - p at N = 0.
double expected_missing_total(const Params& params) {
    const double p = params.p();
    const double p2 = p * p;
    const double q = std::sqrt((1.0 - p) * (1.0 + p));
    const std::int64_t n = params.n_max();
    const double qn = power(q, n);
    if (n % 2 == 0) {
        return expected_missing_total_limit(p) - qn * (4.0 - 2.0 * p - 3.0 * p2 + p2 * p) / p2;
    }
    return expected_missing_total_limit(p) - qn * (4.0 - 2.0 * p - p2) * q / p2;
}

double fringe_truncation_bound(const Params& params) {
    const double p = params.p();
    const double one_minus_p2 = (1.0 - p) * (1.0 + p);
    return 2.0 / (p * p) * std::pow(one_minus_p2, static_cast<double>(params.n_max()) / 4.0);
}

double convolution_discrepancy_bound(const Params& params) {
    return 4.0 * fringe_truncation_bound(params);
}

}  // namespace sumset
