#include "sumset/chains.hpp"

#include <cmath>
#include <string>

#include "sumset/errors.hpp"
#include "sumset/exact.hpp"
#include "sumset/model.hpp"

namespace sumset {

ChainProbTable::ChainProbTable(double p, std::int64_t max_k) : p_(p) {
    require_probability(p);
    if (max_k < 0) {
        throw DomainError("chain table size must be nonnegative");
    }
    values_ = {1.0};
    complements_ = {0.0};
    extend_to(max_k);
}

void ChainProbTable::extend_to(std::int64_t k) {
    if (k <= max_k()) return;
    const double p = p_;
    const double q = 1.0 - p;
    const double pq = p * q;
    values_.reserve(static_cast<std::size_t>(k) + 1);
    complements_.reserve(static_cast<std::size_t>(k) + 1);
    if (values_.size() < 2) {
        values_.push_back(1.0);
        complements_.push_back(0.0);
    }
    while (max_k() < k) {
        const std::size_t n = values_.size();
        values_.push_back(q * values_[n - 1] + pq * values_[n - 2]);
        complements_.push_back(q * complements_[n - 1] + pq * complements_[n - 2] + p * p);
    }
}

double ChainProbTable::at(std::int64_t k) const {
    if (k < 0 || k > max_k()) {
        throw DomainError("chain index " + std::to_string(k) + " outside table");
    }
    return values_[static_cast<std::size_t>(k)];
}

double ChainProbTable::complement(std::int64_t k) const {
    if (k < 0 || k > max_k()) {
        throw DomainError("chain index " + std::to_string(k) + " outside table");
    }
    return complements_[static_cast<std::size_t>(k)];
}

SpectralConstants spectral_constants(double p) {
    require_probability(p);
    const double q = 1.0 - p;
    const double root = std::sqrt(q * (1.0 + 3.0 * p));
    SpectralConstants s{};
    s.lambda1 = (q + root) / 2.0;
    // lambda1 * lambda2 = -p(1-p); avoids cancellation in q - root.
    s.lambda2 = -p * q / s.lambda1;
    const double gap = s.lambda1 - s.lambda2;
    s.c1 = (1.0 - s.lambda2) / gap;
    s.c2 = -(1.0 - s.lambda1) / gap;
    s.alpha = -0.5 * std::log1p(-p * p);
    s.alpha_prime = -std::log(s.lambda1);
    return s;
}

double chain_prob_closed(double p, std::int64_t k) {
    if (k < 0) {
        throw DomainError("chain index must be nonnegative");
    }
    const auto s = spectral_constants(p);
    return s.c1 * power(s.lambda1, k) + s.c2 * power(s.lambda2, k);
}

}  // namespace sumset
