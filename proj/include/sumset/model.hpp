#pragma once

/**
 * @file model.hpp
 * @brief Core types for random sumsets A+A with A a Bernoulli(p) subset of {0,...,N}.
 *
 * A subset of {0,...,N} is stored as a packed bit-vector of length N+1 and its
 * sumset as a bit-vector of length 2N+1. The sumset is built by shift-OR
 * accumulation: for every a in A, A shifted left by a is OR-ed into the result.
 */

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sumset {

/// Experiment definition: inclusion probability p in (0,1) and upper endpoint N >= 0.
class Params {
public:
    Params(double p, std::int64_t n_max);

    double p() const noexcept { return p_; }
    std::int64_t n_max() const noexcept { return n_max_; }

private:
    double p_;
    std::int64_t n_max_;
};

/// Throws DomainError unless 0 < p < 1.
void require_probability(double p);

/// Fixed-length packed bit-vector.
class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool test(std::size_t i) const;
    void set(std::size_t i);
    void reset(std::size_t i);

    /// Number of set bits in the half-open range [first, last).
    std::size_t count(std::size_t first, std::size_t last) const;
    std::size_t count() const { return count(0, size_); }

    /// result |= (*this << shift), truncated to result.size().
    void or_shifted_into(BitVector& result, std::size_t shift) const;

    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

    /// Clears bits beyond size() in the last word.
    void trim() noexcept;

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

/// Membership vector of A, length N+1.
class SubsetSample {
public:
    explicit SubsetSample(std::int64_t n_max);
    SubsetSample(std::int64_t n_max, std::initializer_list<std::int64_t> members);
    SubsetSample(std::int64_t n_max, std::span<const std::int64_t> members);

    /// Subset whose membership is given by the low N+1 bits of mask (N <= 63).
    static SubsetSample from_mask(std::int64_t n_max, std::uint64_t mask);

    std::int64_t n_max() const noexcept { return n_max_; }
    bool contains(std::int64_t i) const;
    void insert(std::int64_t i);
    std::size_t cardinality() const { return bits_.count(); }

    /// A reflected about N/2: {N - a : a in A}.
    SubsetSample reflected() const;

    const BitVector& bits() const noexcept { return bits_; }
    BitVector& bits() noexcept { return bits_; }

private:
    std::int64_t n_max_;
    BitVector bits_;
};

/// Membership vector of A+A, length 2N+1.
class SumsetMask {
public:
    SumsetMask(std::int64_t n_max, BitVector bits);

    std::int64_t n_max() const noexcept { return n_max_; }
    bool contains(std::int64_t s) const;
    std::size_t size() const noexcept { return bits_.size(); }
    const BitVector& bits() const noexcept { return bits_; }

private:
    std::int64_t n_max_;
    BitVector bits_;
};

/// Missing-summand counts of one sample.
///   y        : [0, N]
///   z        : [N+1, 2N]
///   w        : [0, 2N]           (= y + z)
///   y_tilde  : [0, floor(N/2)]
///   z_tilde  : [floor(3N/2)+1, 2N]
struct MissingCounts {
    std::int64_t y = 0;
    std::int64_t z = 0;
    std::int64_t w = 0;
    std::int64_t y_tilde = 0;
    std::int64_t z_tilde = 0;

    friend bool operator==(const MissingCounts&, const MissingCounts&) = default;
};

/// Selector for the missing-count variables.
enum class Variable { y, z, w, y_tilde, z_tilde };

const char* variable_name(Variable v);

SumsetMask compute_sumset(const SubsetSample& sample);

/// Allocation-free core of compute_sumset: out is cleared, then receives A+A.
/// out.size() must be 2*subset.size()-1.
void sumset_into(const BitVector& subset, BitVector& out);

/// Missing counts read directly from a raw sumset bit-vector of length 2N+1.
MissingCounts missing_counts(const BitVector& sumset_bits, std::int64_t n_max);

/// Throws ContractError when the mask length does not match 2N+1 for params.
MissingCounts missing_counts(const SumsetMask& sumset, const Params& params);

/// Convenience: compute_sumset followed by missing_counts.
MissingCounts missing_counts(const SubsetSample& sample, const Params& params);

}  // namespace sumset
