#include "sumset/orbits.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "sumset/errors.hpp"
#include "sumset/exact.hpp"

namespace sumset {

namespace {

void require_pair(std::int64_t m, std::int64_t n) {
    if (n < 0 || n >= m) {
        throw DomainError("pair requires 0 <= n < m, got m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
}

}  // namespace

Orbit orbit(std::int64_t r, std::int64_t m, std::int64_t n) {
    require_pair(m, n);
    if (r <= n || r > m) {
        throw DomainError("orbit start must satisfy n < r <= m");
    }
    Orbit o;
    o.entries.push_back(r);
    // Entry t (1-based) is reflected through m when t is odd, through n when even.
    bool through_m = true;
    for (;;) {
        const std::int64_t current = o.entries.back();
        const std::int64_t next = (through_m ? m : n) - current;
        if (next < 0) break;
        o.entries.push_back(next);
        if (next == current) {
            o.looped = true;
            break;
        }
        through_m = !through_m;
    }
    return o;
}

std::vector<Orbit> orbit_inventory(std::int64_t m, std::int64_t n) {
    require_pair(m, n);
    std::vector<Orbit> out;
    out.reserve(static_cast<std::size_t>(m - n));
    for (std::int64_t r = n + 1; r <= m; ++r) {
        out.push_back(orbit(r, m, n));
    }
    return out;
}

std::int64_t twist_degree(std::int64_t m, std::int64_t n) {
    require_pair(m, n);
    const std::int64_t gap = m - n;
    return (n + 1 + gap - 1) / gap;
}

PairGeometry pair_geometry(std::int64_t m, std::int64_t n) {
    PairGeometry g;
    g.m = m;
    g.n = n;
    g.l = twist_degree(m, n);
    g.d1 = (m + 1) - g.l * (m - n);
    g.d2 = g.l * (m - n) - (n + 1);
    g.parity = {static_cast<int>(m % 2), static_cast<int>(n % 2), static_cast<int>(g.l % 2)};

    const auto [sm, sn, sl] = g.parity;
    if (sm == 1 && sn == 1) {
        g.looped_long = 0;
        g.looped_short = 0;
    } else if (sm == 0 && sn == 0) {
        g.looped_long = 1;
        g.looped_short = 1;
    } else if ((sm == 1 && sl == 1) || (sm == 0 && sl == 0)) {
        // s = (1,0,1) or (0,1,0)
        g.looped_long = 1;
        g.looped_short = 0;
    } else {
        // s = (1,0,0) or (0,1,1)
        g.looped_long = 0;
        g.looped_short = 1;
    }
    g.loopless_long = g.d1 - g.looped_long;
    g.loopless_short = g.d2 - g.looped_short;
    return g;
}

double pair_missing_prob(std::int64_t m, std::int64_t n, ChainProbTable& table) {
    const PairGeometry g = pair_geometry(m, n);
    table.extend_to(2 * g.l + 2);
    const double q = 1.0 - table.p();
    double prob = power(table.at(2 * g.l + 2), g.loopless_long / 2) * power(table.at(2 * g.l), g.loopless_short / 2);
    if (g.looped_long != 0) prob *= q * table.at(g.l);
    if (g.looped_short != 0) prob *= q * table.at(g.l - 1);
    return prob;
}

double pair_missing_prob(std::int64_t m, std::int64_t n, const Params& params) {
    require_pair(m, n);
    if (m > params.n_max()) {
        throw DomainError("pair probability requires m <= N");
    }
    ChainProbTable table(params.p(), 2 * twist_degree(m, n) + 2);
    return pair_missing_prob(m, n, table);
}

double pair_missing_prob_upper(std::int64_t m, std::int64_t n, double p) {
    require_pair(m, n);
    const double lambda1 = spectral_constants(p).lambda1;
    return std::pow(lambda1, 1.0 + static_cast<double>(m + n) / 2.0);
}

void write_orbit_csv(std::ostream& out, std::int64_t m, std::int64_t n, bool header) {
    if (header) out << "m,n,r,entries,looped\n";
    for (const auto& o : orbit_inventory(m, n)) {
        out << m << ',' << n << ',' << o.entries.front() << ',';
        for (std::size_t i = 0; i < o.entries.size(); ++i) {
            if (i != 0) out << '-';
            out << o.entries[i];
        }
        out << ',' << (o.looped ? 1 : 0) << '\n';
    }
}

}  // namespace sumset
