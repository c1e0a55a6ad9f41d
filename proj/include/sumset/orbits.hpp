#pragma once

/**
 * @file orbits.hpp
 * @brief Orbit decomposition for pairs (m, n) and the exact probability P(m, n not in A+A).
 *
 * Starting from n < r <= m, an orbit alternates the reflections x -> m - x and
 * x -> n - x. It stops as loopless when the next reflection would be
 * negative, and as looped when the next value repeats the current one (the
 * repeat is kept as the final entry, e.g. (16, 1, 11, 6, 6) for m=17, n=12).
 *
 * m and n are both missing from A+A iff every orbit is a satisfied chain
 * (no two adjacent entries both in A). With twist degree
 *
 *   l = ceil((n+1)/(m-n)),  d1 = (m+1) - l(m-n),  d2 = l(m-n) - (n+1),
 *
 * loopless orbits have length 2l+2 (starts in [l(m-n), m]) or 2l (starts in
 * [n+1, l(m-n)-1]); looped orbits have length l+2 or l+1 respectively. The
 * counts depend only on the parities s = (m, n, l) mod 2, and
 *
 *   P(m, n not in A+A) = a_{2l+2}^{floor(d1/2)} a_{2l}^{floor(d2/2)}
 *                        * [(1-p) a_l]^{c1} * [(1-p) a_{l-1}]^{c2}
 *
 * where c1, c2 in {0,1} count the looped orbits of each length.
 */

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sumset/chains.hpp"
#include "sumset/model.hpp"

namespace sumset {

struct Orbit {
    std::vector<std::int64_t> entries;
    bool looped = false;

    std::size_t length() const noexcept { return entries.size(); }
};

/// Orbit of r for the pair (m, n). DomainError unless 0 <= n < r <= m.
Orbit orbit(std::int64_t r, std::int64_t m, std::int64_t n);

/// Orbits of every start r in (n, m], in increasing r.
std::vector<Orbit> orbit_inventory(std::int64_t m, std::int64_t n);

/// ceil((n+1)/(m-n)) for 0 <= n < m.
std::int64_t twist_degree(std::int64_t m, std::int64_t n);

struct PairGeometry {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t l = 0;
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    std::array<int, 3> parity{};   ///< (m, n, l) mod 2
    std::int64_t loopless_long = 0;   ///< loopless orbits of length 2l+2 (both directions)
    std::int64_t loopless_short = 0;  ///< loopless orbits of length 2l
    std::int64_t looped_long = 0;     ///< looped orbits of length l+2
    std::int64_t looped_short = 0;    ///< looped orbits of length l+1
};

PairGeometry pair_geometry(std::int64_t m, std::int64_t n);

/// Exact P(m, n not in A+A). Requires 0 <= n < m <= N.
double pair_missing_prob(std::int64_t m, std::int64_t n, const Params& params);

/// Same, reading a_k from a caller-owned table (extended as needed). No N check:
/// the value is the one for any N >= m.
double pair_missing_prob(std::int64_t m, std::int64_t n, ChainProbTable& table);

/// lambda1^{1 + (m+n)/2}; dominates pair_missing_prob whenever the twist degree is >= 2.
double pair_missing_prob_upper(std::int64_t m, std::int64_t n, double p);

/// CSV rows "m,n,r,entries,looped" with entries joined by '-'.
void write_orbit_csv(std::ostream& out, std::int64_t m, std::int64_t n, bool header = true);

}  // namespace sumset
