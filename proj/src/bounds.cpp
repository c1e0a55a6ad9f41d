#include "sumset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sumset/chains.hpp"
#include "sumset/errors.hpp"
#include "sumset/exact.hpp"

namespace sumset {

namespace {

// exp(log_value), refusing to silently return inf.
double checked_exp(double log_value, const char* what) {
    if (log_value > std::log(1e308)) {
        throw ResourceError(std::string(what) + " is not representable as a double");
    }
    return std::exp(log_value);
}

double clamp_probability(double x, Clamp clamp) { return clamp == Clamp::yes ? std::clamp(x, 0.0, 1.0) : x; }

}  // namespace

double kth_moment_upper(double p, std::int64_t k) {
    if (k < 0) {
        throw DomainError("moment order must be nonnegative");
    }
    const double alpha = spectral_constants(p).alpha;
    const auto kd = static_cast<double>(k);
    return checked_exp(std::log(2.0) + std::lgamma(kd + 1.0) - kd * std::log(alpha), "k-th moment bound");
}

double kth_moment_upper_improved(double p, std::int64_t k) {
    if (k < 1) {
        throw DomainError("improved moment bound needs k >= 1");
    }
    const auto s = spectral_constants(p);
    const auto kd = static_cast<double>(k);
    const double tail = checked_exp(std::log(2.0) + std::lgamma(kd + 1.0) - std::log(s.lambda1) - kd * std::log(s.alpha_prime),
                                    "improved k-th moment bound");
    return expected_missing_left_limit(p) + tail;
}

double mgf_upper(double p, double t) {
    const double alpha = spectral_constants(p).alpha;
    if (!(std::abs(t) < alpha)) {
        throw DomainError("moment generating function bound needs |t| < alpha");
    }
    return 2.0 / (1.0 - t / alpha);
}

double tail_upper_chernoff(double p, std::int64_t n, Clamp clamp) {
    const double alpha = spectral_constants(p).alpha;
    const auto nd = static_cast<double>(n);
    if (nd <= 1.0 / alpha) return 1.0;
    return clamp_probability(2.0 * alpha * nd * std::exp(1.0 - alpha * nd), clamp);
}

double tail_upper_improved(double p, std::int64_t n, Clamp clamp) {
    const auto s = spectral_constants(p);
    const double ap = s.alpha_prime;
    const auto nd = static_cast<double>(n);
    if (nd <= 1.0 / ap) return 1.0;
    const double mean = expected_missing_left_limit(p);
    const double raw = mean * std::exp(-(nd - 1.0) * (ap - 1.0 / nd)) + 2.0 * nd * ap * std::exp(1.0 - nd * ap) / s.lambda1;
    return clamp_probability(raw, clamp);
}

double tail_lower(double p, std::int64_t n, LowerBoundVariant variant) {
    require_probability(p);
    if (n < 0 || n % 2 != 0) {
        throw DomainError("lower tail bound needs a nonnegative even n");
    }
    const std::int64_t exponent = variant == LowerBoundVariant::rigorous ? n / 2 + 1 : n / 2;
    return power(1.0 - p, exponent);
}

}  // namespace sumset
