#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "sumset/errors.hpp"
#include "sumset/model.hpp"

using namespace sumset;

namespace {

std::set<std::int64_t> naive_sumset(const std::vector<std::int64_t>& a) {
    std::set<std::int64_t> out;
    for (auto x : a)
        for (auto y : a) out.insert(x + y);
    return out;
}

std::vector<std::int64_t> members(const SumsetMask& s) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(s.size()); ++i)
        if (s.contains(i)) out.push_back(i);
    return out;
}

}  // namespace

TEST_CASE("params validation") {
    CHECK_NOTHROW(Params(0.5, 0));
    CHECK_THROWS_AS(Params(0.0, 3), DomainError);
    CHECK_THROWS_AS(Params(1.0, 3), DomainError);
    CHECK_THROWS_AS(Params(0.5, -1), DomainError);
}

TEST_CASE("small sumsets") {
    CHECK(members(compute_sumset(SubsetSample(2, {0, 1, 2}))) == std::vector<std::int64_t>{0, 1, 2, 3, 4});
    CHECK(members(compute_sumset(SubsetSample(2))).empty());
    CHECK(members(compute_sumset(SubsetSample(2, {0, 2}))) == std::vector<std::int64_t>{0, 2, 4});
}

TEST_CASE("missing counts examples") {
    const Params params(0.5, 2);
    CHECK(missing_counts(SubsetSample(2, {0, 1, 2}), params) == MissingCounts{0, 0, 0, 0, 0});
    const auto c = missing_counts(SubsetSample(2, {0, 2}), params);
    CHECK(c.y == 1);
    CHECK(c.z == 1);
    CHECK(c.w == 2);
    const auto e = missing_counts(SubsetSample(2), params);
    CHECK(e.y == 3);
    CHECK(e.z == 2);
    CHECK(e.w == 5);
}

TEST_CASE("sumset matches naive pairwise sums across word boundaries") {
    std::mt19937_64 rng(11);
    for (std::int64_t n : {0, 1, 5, 62, 63, 64, 65, 127, 130, 300}) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<std::int64_t> a;
            std::bernoulli_distribution coin(rep % 2 ? 0.1 : 0.6);
            for (std::int64_t i = 0; i <= n; ++i)
                if (coin(rng)) a.push_back(i);
            const SubsetSample sample(n, a);
            const auto s = compute_sumset(sample);
            REQUIRE(s.size() == static_cast<std::size_t>(2 * n + 1));
            const auto expect = naive_sumset(a);
            CHECK(members(s) == std::vector<std::int64_t>(expect.begin(), expect.end()));

            const auto c = missing_counts(sample, Params(0.5, n));
            std::int64_t y = 0, z = 0, yt = 0, zt = 0;
            for (std::int64_t k = 0; k <= 2 * n; ++k) {
                if (expect.count(k)) continue;
                (k <= n ? y : z)++;
                if (k <= n / 2) ++yt;
                if (k > (3 * n) / 2) ++zt;
            }
            CHECK(c.y == y);
            CHECK(c.z == z);
            CHECK(c.w == y + z);
            CHECK(c.y_tilde == yt);
            CHECK(c.z_tilde == zt);
            CHECK(c.y_tilde <= c.y);
            CHECK(c.z_tilde <= c.z);
        }
    }
}

TEST_CASE("reflection swaps the fringes") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const std::int64_t n = 40;
        std::vector<std::int64_t> a;
        for (std::int64_t i = 0; i <= n; ++i)
            if (rng() % 3 == 0) a.push_back(i);
        const SubsetSample sample(n, a);
        const Params params(0.3, n);
        const auto c = missing_counts(sample, params);
        const auto r = missing_counts(sample.reflected(), params);
        // [0,N] of the reflection corresponds to [N,2N] of the original.
        const std::int64_t mid_missing = compute_sumset(sample).contains(n) ? 0 : 1;
        CHECK(r.y == c.z + mid_missing);
        CHECK(r.z == c.y - mid_missing);
        CHECK(r.w == c.w);
    }
}

TEST_CASE("mask length mismatch is a contract error") {
    const SumsetMask mask(3, BitVector(7));
    CHECK_THROWS_AS(missing_counts(mask, Params(0.5, 4)), ContractError);
    CHECK_THROWS_AS(SumsetMask(3, BitVector(6)), ContractError);
}

TEST_CASE("bit vector basics") {
    BitVector v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.count(1, 129) == 1);
    v.reset(64);
    CHECK_FALSE(v.test(64));
    BitVector out(200);
    v.or_shifted_into(out, 70);
    CHECK(out.test(70));
    CHECK(out.test(199));
    CHECK(out.count() == 2);
    BitVector small(100);
    v.or_shifted_into(small, 1);
    CHECK(small.count() == 1);
    CHECK(small.test(1));
}

TEST_CASE("from_mask") {
    const auto s = SubsetSample::from_mask(4, 0b10101);
    CHECK(s.contains(0));
    CHECK_FALSE(s.contains(1));
    CHECK(s.contains(4));
    CHECK(s.cardinality() == 3);
}
