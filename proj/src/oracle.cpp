#include "sumset/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "sumset/csv.hpp"
#include "sumset/errors.hpp"
#include "sumset/exact.hpp"

namespace sumset {

const std::vector<double>& ExactDistribution::pmf(Variable v) const {
    switch (v) {
        case Variable::y: return y;
        case Variable::z: return z;
        case Variable::w: return w;
        case Variable::y_tilde: return y_tilde;
        case Variable::z_tilde: return z_tilde;
    }
    throw ContractError("unknown variable");
}

namespace {

// Integer subset counts indexed by cardinality.
struct CountTable {
    std::size_t n_card;
    std::size_t y_size, z_size, w_size, yt_size, zt_size;
    std::vector<std::uint64_t> y, z, w, yt, zt, joint;

    CountTable(std::int64_t big_n)
        : n_card(static_cast<std::size_t>(big_n) + 2),
          y_size(static_cast<std::size_t>(big_n) + 2),
          z_size(static_cast<std::size_t>(big_n) + 1),
          w_size(static_cast<std::size_t>(2 * big_n) + 2),
          yt_size(static_cast<std::size_t>(big_n / 2) + 2),
          zt_size(static_cast<std::size_t>(2 * big_n - (3 * big_n) / 2) + 1),
          y(n_card * y_size),
          z(n_card * z_size),
          w(n_card * w_size),
          yt(n_card * yt_size),
          zt(n_card * zt_size),
          joint(n_card * yt_size * zt_size) {}

    void add(std::size_t card, const MissingCounts& c) {
        const auto yt_i = static_cast<std::size_t>(c.y_tilde);
        const auto zt_i = static_cast<std::size_t>(c.z_tilde);
        ++y[card * y_size + static_cast<std::size_t>(c.y)];
        ++z[card * z_size + static_cast<std::size_t>(c.z)];
        ++w[card * w_size + static_cast<std::size_t>(c.w)];
        ++yt[card * yt_size + yt_i];
        ++zt[card * zt_size + zt_i];
        ++joint[(card * yt_size + yt_i) * zt_size + zt_i];
    }

    void merge(const CountTable& o) {
        auto add_all = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        };
        add_all(y, o.y);
        add_all(z, o.z);
        add_all(w, o.w);
        add_all(yt, o.yt);
        add_all(zt, o.zt);
        add_all(joint, o.joint);
    }
};

void enumerate_range(std::int64_t big_n, std::uint64_t first, std::uint64_t last, CountTable& table) {
    BitVector subset(static_cast<std::size_t>(big_n) + 1);
    BitVector sums(static_cast<std::size_t>(2 * big_n) + 1);
    for (std::uint64_t mask = first; mask < last; ++mask) {
        subset.words()[0] = mask;
        sumset_into(subset, sums);
        table.add(static_cast<std::size_t>(std::popcount(mask)), missing_counts(sums, big_n));
    }
}

std::vector<double> cardinality_weights(double p, std::int64_t n_elements) {
    std::vector<double> weights(static_cast<std::size_t>(n_elements) + 1);
    for (std::int64_t k = 0; k <= n_elements; ++k) {
        weights[static_cast<std::size_t>(k)] = power(p, k) * power(1.0 - p, n_elements - k);
    }
    return weights;
}

std::vector<double> weigh(const std::vector<std::uint64_t>& counts, std::size_t size, const std::vector<double>& weights) {
    std::vector<double> pmf(size, 0.0);
    for (std::size_t card = 0; card < weights.size(); ++card) {
        for (std::size_t v = 0; v < size; ++v) {
            const auto c = counts[card * size + v];
            if (c != 0) pmf[v] += static_cast<double>(c) * weights[card];
        }
    }
    return pmf;
}

}  // namespace

ExactDistribution exact_distribution(const Params& params, unsigned workers) {
    const std::int64_t big_n = params.n_max();
    if (big_n > kOracleMaxN) {
        throw ResourceError("oracle enumeration limited to N <= " + std::to_string(kOracleMaxN));
    }
    const std::uint64_t total = std::uint64_t{1} << (big_n + 1);
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));

    std::vector<CountTable> tables(workers, CountTable(big_n));
    if (workers == 1) {
        enumerate_range(big_n, 0, total, tables[0]);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned i = 0; i < workers; ++i) {
            const std::uint64_t first = std::min(total, i * chunk);
            const std::uint64_t last = std::min(total, first + chunk);
            threads.emplace_back(enumerate_range, big_n, first, last, std::ref(tables[i]));
        }
        for (auto& t : threads) t.join();
        for (unsigned i = 1; i < workers; ++i) tables[0].merge(tables[i]);
    }

    const CountTable& t = tables[0];
    const auto weights = cardinality_weights(params.p(), big_n + 1);
    ExactDistribution d{params, {}, {}, {}, {}, {}, {}};
    d.y = weigh(t.y, t.y_size, weights);
    d.z = weigh(t.z, t.z_size, weights);
    d.w = weigh(t.w, t.w_size, weights);
    d.y_tilde = weigh(t.yt, t.yt_size, weights);
    d.z_tilde = weigh(t.zt, t.zt_size, weights);
    const auto joint_flat = weigh(t.joint, t.yt_size * t.zt_size, weights);
    d.joint_tilde.assign(t.yt_size, std::vector<double>(t.zt_size, 0.0));
    for (std::size_t i = 0; i < t.yt_size; ++i) {
        for (std::size_t j = 0; j < t.zt_size; ++j) {
            d.joint_tilde[i][j] = joint_flat[i * t.zt_size + j];
        }
    }
    return d;
}

std::vector<double> exact_missing_probs(const Params& params) {
    const std::int64_t big_n = params.n_max();
    if (big_n > kOracleMaxN) {
        throw ResourceError("oracle enumeration limited to N <= " + std::to_string(kOracleMaxN));
    }
    const auto width = static_cast<std::size_t>(2 * big_n + 1);
    const auto n_card = static_cast<std::size_t>(big_n) + 2;
    std::vector<std::uint64_t> counts(n_card * width, 0);
    BitVector subset(static_cast<std::size_t>(big_n) + 1);
    BitVector sums(width);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (big_n + 1)); ++mask) {
        subset.words()[0] = mask;
        sumset_into(subset, sums);
        const auto card = static_cast<std::size_t>(std::popcount(mask));
        for (std::size_t s = 0; s < width; ++s) {
            if (!sums.test(s)) ++counts[card * width + s];
        }
    }
    return weigh(counts, width, cardinality_weights(params.p(), big_n + 1));
}

double exact_pair_missing(std::int64_t m, std::int64_t n, const Params& params) {
    if (n < 0 || n >= m || m > params.n_max()) {
        throw DomainError("pair oracle needs 0 <= n < m <= N");
    }
    if (m > kOracleMaxN) {
        throw ResourceError("pair oracle limited to m <= " + std::to_string(kOracleMaxN));
    }
    // Both events only involve elements 0..m.
    const std::uint64_t total = std::uint64_t{1} << (m + 1);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(m) + 2, 0);
    BitVector subset(static_cast<std::size_t>(m) + 1);
    BitVector sums(static_cast<std::size_t>(2 * m) + 1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        subset.words()[0] = mask;
        sumset_into(subset, sums);
        if (!sums.test(static_cast<std::size_t>(m)) && !sums.test(static_cast<std::size_t>(n))) {
            ++hits[static_cast<std::size_t>(std::popcount(mask))];
        }
    }
    const auto weights = cardinality_weights(params.p(), m + 1);
    double prob = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        prob += static_cast<double>(hits[k]) * weights[k];
    }
    return prob;
}

double exact_moment(const ExactDistribution& dist, Variable v, int k) {
    if (k < 0) {
        throw DomainError("moment order must be nonnegative");
    }
    const auto& pmf = dist.pmf(v);
    double total = 0.0;
    for (std::size_t value = 0; value < pmf.size(); ++value) {
        total += std::pow(static_cast<double>(value), k) * pmf[value];
    }
    return total;
}

double exact_moment(const Params& params, Variable v, int k) { return exact_moment(exact_distribution(params), v, k); }

void write_pmf_csv(std::ostream& out, const ExactDistribution& dist) {
    out << "variable,value,probability\n";
    for (auto v : {Variable::y, Variable::z, Variable::w, Variable::y_tilde, Variable::z_tilde}) {
        const auto& pmf = dist.pmf(v);
        for (std::size_t value = 0; value < pmf.size(); ++value) {
            out << variable_name(v) << ',' << value << ',' << csv::number(pmf[value]) << '\n';
        }
    }
}

}  // namespace sumset
