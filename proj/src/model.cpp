#include "sumset/model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "sumset/errors.hpp"

namespace sumset {

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("probability must lie strictly inside (0,1), got " + std::to_string(p));
    }
}

Params::Params(double p, std::int64_t n_max) : p_(p), n_max_(n_max) {
    require_probability(p);
    if (n_max < 0) {
        throw DomainError("N must be nonnegative, got " + std::to_string(n_max));
    }
}

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

bool BitVector::test(std::size_t i) const {
    if (i >= size_) {
        throw ContractError("bit index out of range");
    }
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVector::set(std::size_t i) {
    if (i >= size_) {
        throw ContractError("bit index out of range");
    }
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
}

void BitVector::reset(std::size_t i) {
    if (i >= size_) {
        throw ContractError("bit index out of range");
    }
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

std::size_t BitVector::count(std::size_t first, std::size_t last) const {
    if (last > size_) last = size_;
    if (first >= last) return 0;

    const std::size_t w0 = first / kWordBits;
    const std::size_t w1 = (last - 1) / kWordBits;
    const Word lo_mask = ~Word{0} << (first % kWordBits);
    const std::size_t hi_bits = last - w1 * kWordBits;
    const Word hi_mask = hi_bits == kWordBits ? ~Word{0} : (Word{1} << hi_bits) - 1;

    if (w0 == w1) {
        return static_cast<std::size_t>(std::popcount(words_[w0] & lo_mask & hi_mask));
    }
    std::size_t total = static_cast<std::size_t>(std::popcount(words_[w0] & lo_mask));
    for (std::size_t w = w0 + 1; w < w1; ++w) {
        total += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    total += static_cast<std::size_t>(std::popcount(words_[w1] & hi_mask));
    return total;
}

void BitVector::or_shifted_into(BitVector& result, std::size_t shift) const {
    const std::size_t word_shift = shift / kWordBits;
    const unsigned bit_shift = static_cast<unsigned>(shift % kWordBits);
    auto& out = result.words_;
    const std::size_t n_out = out.size();
    const std::size_t n_in = words_.size();

    if (bit_shift == 0) {
        for (std::size_t i = 0; i < n_in && i + word_shift < n_out; ++i) {
            out[i + word_shift] |= words_[i];
        }
    } else {
        Word carry = 0;
        for (std::size_t i = 0; i < n_in && i + word_shift < n_out; ++i) {
            out[i + word_shift] |= (words_[i] << bit_shift) | carry;
            carry = words_[i] >> (kWordBits - bit_shift);
        }
        if (n_in + word_shift < n_out) {
            out[n_in + word_shift] |= carry;
        }
    }
    result.trim();
}

void BitVector::trim() noexcept {
    const std::size_t tail = size_ % kWordBits;
    if (tail != 0 && !words_.empty()) {
        words_.back() &= (Word{1} << tail) - 1;
    }
}

// ---------------------------------------------------------------------------
// SubsetSample

namespace {

std::size_t checked_length(std::int64_t n_max) {
    if (n_max < 0) {
        throw DomainError("N must be nonnegative");
    }
    return static_cast<std::size_t>(n_max) + 1;
}

}  // namespace

SubsetSample::SubsetSample(std::int64_t n_max) : n_max_(n_max), bits_(checked_length(n_max)) {}

SubsetSample::SubsetSample(std::int64_t n_max, std::initializer_list<std::int64_t> members)
    : SubsetSample(n_max, std::span<const std::int64_t>(members.begin(), members.size())) {}

SubsetSample::SubsetSample(std::int64_t n_max, std::span<const std::int64_t> members) : SubsetSample(n_max) {
    for (auto a : members) insert(a);
}

SubsetSample SubsetSample::from_mask(std::int64_t n_max, std::uint64_t mask) {
    if (n_max > 63) {
        throw DomainError("from_mask supports N <= 63");
    }
    SubsetSample s(n_max);
    s.bits_.words()[0] = mask;
    s.bits_.trim();
    return s;
}

bool SubsetSample::contains(std::int64_t i) const {
    if (i < 0 || i > n_max_) return false;
    return bits_.test(static_cast<std::size_t>(i));
}

void SubsetSample::insert(std::int64_t i) {
    if (i < 0 || i > n_max_) {
        throw DomainError("subset element " + std::to_string(i) + " outside [0, N]");
    }
    bits_.set(static_cast<std::size_t>(i));
}

SubsetSample SubsetSample::reflected() const {
    SubsetSample out(n_max_);
    for (std::int64_t a = 0; a <= n_max_; ++a) {
        if (contains(a)) out.insert(n_max_ - a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// SumsetMask

SumsetMask::SumsetMask(std::int64_t n_max, BitVector bits) : n_max_(n_max), bits_(std::move(bits)) {
    if (n_max < 0 || bits_.size() != static_cast<std::size_t>(2 * n_max + 1)) {
        throw ContractError("sumset mask length must equal 2N+1");
    }
}

bool SumsetMask::contains(std::int64_t s) const {
    if (s < 0 || s > 2 * n_max_) return false;
    return bits_.test(static_cast<std::size_t>(s));
}

const char* variable_name(Variable v) {
    switch (v) {
        case Variable::y: return "Y";
        case Variable::z: return "Z";
        case Variable::w: return "W";
        case Variable::y_tilde: return "Y_tilde";
        case Variable::z_tilde: return "Z_tilde";
    }
    return "?";
}

void sumset_into(const BitVector& subset, BitVector& out) {
    if (subset.size() == 0 || out.size() != 2 * subset.size() - 1) {
        throw ContractError("sumset buffer must have length 2N+1");
    }
    for (auto& w : out.words()) w = 0;
    const auto words = subset.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        BitVector::Word word = words[w];
        while (word != 0) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(word));
            word &= word - 1;
            subset.or_shifted_into(out, w * BitVector::kWordBits + bit);
        }
    }
}

SumsetMask compute_sumset(const SubsetSample& sample) {
    const std::int64_t n = sample.n_max();
    BitVector result(static_cast<std::size_t>(2 * n + 1));
    sumset_into(sample.bits(), result);
    return SumsetMask(n, std::move(result));
}

MissingCounts missing_counts(const SumsetMask& sumset, const Params& params) {
    if (sumset.n_max() != params.n_max()) {
        throw ContractError("sumset length inconsistent with params");
    }
    return missing_counts(sumset.bits(), params.n_max());
}

MissingCounts missing_counts(const BitVector& bits, std::int64_t n) {
    if (n < 0 || bits.size() != static_cast<std::size_t>(2 * n + 1)) {
        throw ContractError("sumset length inconsistent with params");
    }
    auto missing = [&](std::int64_t first, std::int64_t last_inclusive) -> std::int64_t {
        if (last_inclusive < first) return 0;
        const auto f = static_cast<std::size_t>(first);
        const auto l = static_cast<std::size_t>(last_inclusive) + 1;
        return static_cast<std::int64_t>((l - f) - bits.count(f, l));
    };

    MissingCounts c;
    c.y = missing(0, n);
    c.z = missing(n + 1, 2 * n);
    c.w = c.y + c.z;
    c.y_tilde = missing(0, n / 2);
    c.z_tilde = missing((3 * n) / 2 + 1, 2 * n);
    return c;
}

MissingCounts missing_counts(const SubsetSample& sample, const Params& params) {
    if (sample.n_max() != params.n_max()) {
        throw ContractError("sample length inconsistent with params");
    }
    return missing_counts(compute_sumset(sample), params);
}

}  // namespace sumset
