#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "sumset/chains.hpp"
#include "sumset/errors.hpp"
#include "sumset/orbits.hpp"

using namespace sumset;

namespace {

using Entries = std::vector<std::int64_t>;

double weight(double p, std::uint64_t mask, std::int64_t bits) {
    const int k = __builtin_popcountll(mask);
    return std::pow(p, k) * std::pow(1.0 - p, static_cast<double>(bits - k));
}

// P(m and n both missing from A+A), by enumeration over subsets of {0..m}.
double brute_pair(std::int64_t m, std::int64_t n, double p) {
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << (m + 1)); ++mask) {
        bool hit = false;
        for (std::int64_t a = 0; a <= m && !hit; ++a) {
            if (!((mask >> a) & 1U)) continue;
            if ((m - a >= 0 && ((mask >> (m - a)) & 1U)) || (n - a >= 0 && ((mask >> (n - a)) & 1U))) hit = true;
        }
        if (!hit) total += weight(p, mask, m + 1);
    }
    return total;
}

// P(no two adjacent entries both in A), entries drawn from {0..m}.
double brute_chain(const Entries& e, std::int64_t m, double p) {
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << (m + 1)); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < e.size() && ok; ++i)
            if (((mask >> e[i]) & 1U) && ((mask >> e[i + 1]) & 1U)) ok = false;
        if (ok) total += weight(p, mask, m + 1);
    }
    return total;
}

}  // namespace

TEST_CASE("orbit examples") {
    const auto a = orbit(15, 17, 13);
    CHECK(a.entries == Entries{15, 2, 11, 6, 7, 10, 3, 14});
    CHECK_FALSE(a.looped);
    const auto b = orbit(16, 17, 12);
    CHECK(b.entries == Entries{16, 1, 11, 6, 6});
    CHECK(b.looped);
    const auto c = orbit(17, 17, 12);
    CHECK(c.entries == Entries{17, 0, 12, 5, 7, 10, 2, 15});
    CHECK_FALSE(c.looped);
    CHECK_THROWS_AS(orbit(12, 17, 12), DomainError);
    CHECK_THROWS_AS(orbit(18, 17, 12), DomainError);
}

TEST_CASE("pair geometry examples") {
    const auto g = pair_geometry(17, 13);
    CHECK(g.l == 4);
    CHECK(g.d1 == 2);
    CHECK(g.d2 == 2);
    CHECK(g.parity == std::array<int, 3>{1, 1, 0});
    CHECK(g.loopless_long == 2);
    CHECK(g.loopless_short == 2);
    CHECK(g.looped_long == 0);
    CHECK(g.looped_short == 0);

    const auto h = pair_geometry(17, 12);
    CHECK(h.l == 3);
    CHECK(h.d1 == 3);
    CHECK(h.d2 == 2);
    CHECK(h.parity == std::array<int, 3>{1, 0, 1});
    CHECK(h.looped_long == 1);
    CHECK(h.loopless_long == 2);
    CHECK(h.loopless_short == 2);

    const auto k = pair_geometry(1, 0);
    CHECK(k.l == 1);
    CHECK(k.d1 == 1);
    CHECK(k.d2 == 0);
    CHECK(k.parity == std::array<int, 3>{1, 0, 1});
    CHECK_THROWS_AS(pair_geometry(3, 3), DomainError);
}

TEST_CASE("orbits partition {0..m}") {
    for (std::int64_t m = 1; m <= 40; ++m) {
        for (std::int64_t n = 0; n < m; ++n) {
            std::vector<int> seen(static_cast<std::size_t>(m) + 1, 0);
            for (const auto& o : orbit_inventory(m, n)) {
                if (!o.looped && o.entries.front() < o.entries.back()) continue;  // reversal of another orbit
                auto e = o.entries;
                if (o.looped) e.pop_back();
                for (auto x : e) ++seen[static_cast<std::size_t>(x)];
                if (!o.looped) {
                    // loopless orbits have distinct entries
                    std::vector<int> local(static_cast<std::size_t>(m) + 1, 0);
                    for (auto x : o.entries) CHECK(++local[static_cast<std::size_t>(x)] == 1);
                }
            }
            for (std::int64_t x = 0; x <= m; ++x) CHECK_MESSAGE(seen[static_cast<std::size_t>(x)] == 1, "m=" << m << " n=" << n << " x=" << x);
        }
    }
}

TEST_CASE("geometry counts match classified orbits") {
    for (std::int64_t m = 1; m <= 60; ++m) {
        for (std::int64_t n = 0; n < m; ++n) {
            const auto g = pair_geometry(m, n);
            CHECK(g.d1 >= 0);
            CHECK(g.d2 >= 0);
            CHECK(g.d1 + g.d2 == m - n);
            CHECK(g.loopless_long % 2 == 0);
            CHECK(g.loopless_short % 2 == 0);
            CHECK(g.loopless_long + g.looped_long == g.d1);
            CHECK(g.loopless_short + g.looped_short == g.d2);
            std::int64_t ll = 0, ls = 0, pl = 0, ps = 0, other = 0;
            for (const auto& o : orbit_inventory(m, n)) {
                const auto len = static_cast<std::int64_t>(o.length());
                if (!o.looped && len == 2 * g.l + 2) ++ll;
                else if (!o.looped && len == 2 * g.l) ++ls;
                else if (o.looped && len == g.l + 2) ++pl;
                else if (o.looped && len == g.l + 1) ++ps;
                else ++other;
            }
            INFO("m=" << m << " n=" << n);
            CHECK(other == 0);
            CHECK(ll == g.loopless_long);
            CHECK(ls == g.loopless_short);
            CHECK(pl == g.looped_long);
            CHECK(ps == g.looped_short);
        }
    }
}

TEST_CASE("orbit length lemmas") {
    for (std::int64_t m = 1; m <= 40; ++m) {
        for (std::int64_t n = 0; n < m; ++n) {
            for (std::int64_t r = n + 1; r <= m; ++r) {
                const auto o = orbit(r, m, n);
                const std::int64_t c = (r + 1 + (m - n) - 1) / (m - n);
                const auto len = static_cast<std::int64_t>(o.length());
                CHECK(len == (o.looped ? c + 1 : 2 * c));
            }
        }
    }
}

TEST_CASE("orbit satisfaction probabilities") {
    for (double p : {0.3, 0.6}) {
        ChainProbTable t(p, 40);
        for (std::int64_t m = 1; m <= 9; ++m) {
            for (std::int64_t n = 0; n < m; ++n) {
                for (const auto& o : orbit_inventory(m, n)) {
                    const auto k = static_cast<std::int64_t>(o.length());
                    const double expect = o.looped ? (1.0 - p) * t.at(k - 2) : t.at(k);
                    CHECK(std::abs(brute_chain(o.entries, m, p) - expect) < 1e-13);
                }
            }
        }
    }
}

TEST_CASE("pair probability examples") {
    for (double p : {0.1, 0.5, 0.9}) {
        const Params params(p, 5);
        CHECK(pair_missing_prob(1, 0, params) == doctest::Approx(1.0 - p).epsilon(1e-14));
        CHECK(pair_missing_prob(2, 0, params) == doctest::Approx((1.0 - p) * (1.0 - p)).epsilon(1e-14));
    }
    CHECK(pair_missing_prob(17, 13, Params(0.5, 17)) == doctest::Approx(495.0 / 16384.0).epsilon(1e-14));
    CHECK_THROWS_AS(pair_missing_prob(6, 2, Params(0.5, 5)), DomainError);
    CHECK_THROWS_AS(pair_missing_prob(4, 4, Params(0.5, 5)), DomainError);
}

TEST_CASE("pair probability against brute force") {
    for (double p : {0.1, 0.5, 0.7}) {
        const Params params(p, 11);
        for (std::int64_t m = 1; m <= 11; ++m)
            for (std::int64_t n = 0; n < m; ++n)
                CHECK(std::abs(pair_missing_prob(m, n, params) - brute_pair(m, n, p)) < 1e-13);
    }
}

TEST_CASE("pair upper bound dominates when the twist degree is at least two") {
    CHECK(pair_missing_prob_upper(17, 13, 0.5) == doctest::Approx(std::pow((1 + std::sqrt(5.0)) / 4, 16)).epsilon(1e-13));
    CHECK(pair_missing_prob_upper(17, 13, 0.5) >= 0.0302);
    CHECK(pair_missing_prob_upper(17, 13, 0.999999) < 1e-6);
    for (double p : {0.3, 0.5, 0.7}) {
        const Params params(p, 14);
        for (std::int64_t m = 1; m <= 14; ++m)
            for (std::int64_t n = 0; n < m; ++n)
                if (twist_degree(m, n) >= 2) CHECK(pair_missing_prob_upper(m, n, p) >= pair_missing_prob(m, n, params));
    }
}

TEST_CASE("orbit csv") {
    std::ostringstream out;
    write_orbit_csv(out, 17, 12);
    const auto s = out.str();
    CHECK(s.rfind("m,n,r,entries,looped\n", 0) == 0);
    CHECK(s.find("17,12,16,16-1-11-6-6,1\n") != std::string::npos);
    CHECK(s.find("17,12,17,17-0-12-5-7-10-2-15,0\n") != std::string::npos);
}
