#include "sumset/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include "sumset/csv.hpp"
#include "sumset/errors.hpp"

namespace sumset {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial) {
    return mix64(mix64(seed) ^ mix64(trial + 0x632BE59BD9B4E019ULL));
}

void add_all(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

double raw_moment(const std::vector<std::uint64_t>& hist, std::uint64_t trials, int k) {
    double total = 0.0;
    for (std::size_t v = 0; v < hist.size(); ++v) {
        if (hist[v] != 0) total += std::pow(static_cast<double>(v), k) * static_cast<double>(hist[v]);
    }
    return total / static_cast<double>(trials);
}

std::vector<double> empirical_pmf(const std::vector<std::uint64_t>& hist, std::uint64_t trials) {
    std::vector<double> pmf(hist.size());
    for (std::size_t v = 0; v < hist.size(); ++v) {
        pmf[v] = static_cast<double>(hist[v]) / static_cast<double>(trials);
    }
    return pmf;
}

double max_convolution_gap(const std::vector<std::uint64_t>& left, const std::vector<std::uint64_t>& right,
                           const std::vector<std::uint64_t>& sum, std::uint64_t trials) {
    const auto a = empirical_pmf(left, trials);
    const auto b = empirical_pmf(right, trials);
    const auto s = empirical_pmf(sum, trials);
    std::vector<double> conv(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) conv[i + j] += a[i] * b[j];
    }
    double gap = 0.0;
    for (std::size_t m = 0; m < std::max(conv.size(), s.size()); ++m) {
        const double lhs = m < s.size() ? s[m] : 0.0;
        const double rhs = m < conv.size() ? conv[m] : 0.0;
        gap = std::max(gap, std::abs(lhs - rhs));
    }
    return gap;
}

void run_range(const McConfig& cfg, std::uint64_t first, std::uint64_t last, McSummary& out) {
    const std::int64_t big_n = cfg.params.n_max();
    const std::uint64_t threshold = bernoulli_threshold(cfg.params.p());
    BitVector subset(static_cast<std::size_t>(big_n) + 1);
    BitVector sums(static_cast<std::size_t>(2 * big_n) + 1);
    for (std::uint64_t t = first; t < last; ++t) {
        sample_subset(cfg.seed, t, threshold, subset);
        sumset_into(subset, sums);
        const auto c = missing_counts(sums, big_n);
        ++out.hist_y[static_cast<std::size_t>(c.y)];
        ++out.hist_z[static_cast<std::size_t>(c.z)];
        ++out.hist_w[static_cast<std::size_t>(c.w)];
        ++out.hist_y_tilde[static_cast<std::size_t>(c.y_tilde)];
        ++out.hist_z_tilde[static_cast<std::size_t>(c.z_tilde)];
        ++out.hist_w_tilde[static_cast<std::size_t>(c.y_tilde + c.z_tilde)];
    }
}

}  // namespace

void McConfig::validate() const {
    if (trials == 0) throw DomainError("trial count must be positive");
    if (shards == 0) throw DomainError("shard count must be positive");
    if (shards > trials) throw DomainError("shard count exceeds trial count");
}

McSummary::McSummary(const McConfig& cfg) : config(cfg) {
    const auto n = static_cast<std::size_t>(cfg.params.n_max());
    hist_y.assign(n + 2, 0);
    hist_z.assign(n + 1, 0);
    hist_w.assign(2 * n + 2, 0);
    hist_y_tilde.assign(n / 2 + 2, 0);
    hist_z_tilde.assign(2 * n - (3 * n) / 2 + 1, 0);
    hist_w_tilde.assign(hist_y_tilde.size() + hist_z_tilde.size() - 1, 0);
}

const std::vector<std::uint64_t>& McSummary::histogram(Variable v) const {
    switch (v) {
        case Variable::y: return hist_y;
        case Variable::z: return hist_z;
        case Variable::w: return hist_w;
        case Variable::y_tilde: return hist_y_tilde;
        case Variable::z_tilde: return hist_z_tilde;
    }
    throw ContractError("unknown variable");
}

double McSummary::mean(Variable v) const { return raw_moment(histogram(v), trials(), 1); }

double McSummary::second_moment(Variable v) const { return raw_moment(histogram(v), trials(), 2); }

double McSummary::variance(Variable v) const {
    const auto m = static_cast<double>(trials());
    if (trials() < 2) return 0.0;
    const double mu = mean(v);
    return (second_moment(v) - mu * mu) * m / (m - 1.0);
}

double McSummary::std_error(Variable v) const {
    return std::sqrt(std::max(0.0, variance(v)) / static_cast<double>(trials()));
}

void McSummary::merge(const McSummary& other) {
    if (other.hist_y.size() != hist_y.size()) throw ContractError("merging summaries of different N");
    add_all(hist_y, other.hist_y);
    add_all(hist_z, other.hist_z);
    add_all(hist_w, other.hist_w);
    add_all(hist_y_tilde, other.hist_y_tilde);
    add_all(hist_z_tilde, other.hist_z_tilde);
    add_all(hist_w_tilde, other.hist_w_tilde);
}

bool operator==(const McSummary& a, const McSummary& b) {
    return a.config.trials == b.config.trials && a.config.seed == b.config.seed && a.hist_y == b.hist_y &&
           a.hist_z == b.hist_z && a.hist_w == b.hist_w && a.hist_y_tilde == b.hist_y_tilde &&
           a.hist_z_tilde == b.hist_z_tilde && a.hist_w_tilde == b.hist_w_tilde;
}

std::uint64_t bernoulli_threshold(double p) {
    require_probability(p);
    const double scaled = std::round(std::ldexp(p, 64));
    if (scaled >= 18446744073709551615.0) return ~std::uint64_t{0};
    return static_cast<std::uint64_t>(scaled);
}

void sample_subset(std::uint64_t seed, std::uint64_t trial, std::uint64_t threshold, BitVector& subset) {
    std::uint64_t state = trial_key(seed, trial);
    auto words = subset.words();
    std::fill(words.begin(), words.end(), 0);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        state += kGamma;
        if (mix64(state) < threshold) words[i / 64] |= std::uint64_t{1} << (i % 64);
    }
}

McSummary run(const McConfig& config) {
    config.validate();
    const double work = static_cast<double>(config.trials) * static_cast<double>(config.params.n_max() + 1);
    if (work > config.work_budget) {
        throw ResourceError("Monte Carlo work exceeds budget");
    }
    const std::uint64_t shards = config.shards;
    std::vector<McSummary> parts(shards, McSummary(config));
    auto shard_first = [&](std::uint64_t s) {
        // trials * s / shards without overflow
        return (config.trials / shards) * s + (config.trials % shards) * s / shards;
    };
    auto run_shard = [&](std::uint64_t s) { run_range(config, shard_first(s), shard_first(s + 1), parts[s]); };

    unsigned threads = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, shards));
    if (threads <= 1) {
        for (std::uint64_t s = 0; s < shards; ++s) run_shard(s);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t s = w; s < shards; s += threads) run_shard(s);
            });
        }
        for (auto& t : pool) t.join();
    }
    McSummary total(config);
    for (const auto& part : parts) total.merge(part);
    return total;
}

TailEstimate tail_estimate(const McSummary& summary, std::int64_t n) {
    const auto& h = summary.hist_y;
    std::uint64_t hits = 0;
    for (std::size_t v = static_cast<std::size_t>(std::max<std::int64_t>(n, 0)); v < h.size(); ++v) hits += h[v];
    const auto m = static_cast<double>(summary.trials());
    const double est = static_cast<double>(hits) / m;
    return {est, std::sqrt(est * (1.0 - est) / m)};
}

std::vector<std::pair<double, double>> normalized_cdf(const McSummary& summary, std::span<const double> grid) {
    const double ybar = summary.mean(Variable::y);
    if (ybar == 0.0) throw DomainError("normalized CDF undefined when every sample has Y = 0");
    const auto& h = summary.hist_y;
    std::vector<std::uint64_t> cumulative(h.size());
    std::uint64_t running = 0;
    for (std::size_t v = 0; v < h.size(); ++v) cumulative[v] = running += h[v];
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const double cut = std::floor(x * ybar);
        double value = 0.0;
        if (cut >= 0.0) {
            const auto idx = static_cast<std::size_t>(std::min(cut, static_cast<double>(h.size() - 1)));
            value = static_cast<double>(cumulative[idx]) / static_cast<double>(summary.trials());
        }
        out.emplace_back(x, value);
    }
    return out;
}

double convolution_check(const McSummary& summary) {
    return max_convolution_gap(summary.hist_y, summary.hist_z, summary.hist_w, summary.trials());
}

double convolution_check_tilde(const McSummary& summary) {
    return max_convolution_gap(summary.hist_y_tilde, summary.hist_z_tilde, summary.hist_w_tilde, summary.trials());
}

double mc_error_estimate(const McSummary& summary) {
    return 2.0 * summary.second_moment(Variable::y) / std::sqrt(static_cast<double>(summary.trials()));
}

void write_summary_csv(std::ostream& out, const McSummary& summary) {
    const auto& c = summary.config;
    out << "# p=" << csv::number(c.params.p()) << '\n'
        << "# N=" << c.params.n_max() << '\n'
        << "# trials=" << c.trials << '\n'
        << "# seed=" << c.seed << '\n'
        << "# shards=" << c.shards << '\n'
        << "variable,value,count\n";
    for (auto v : {Variable::y, Variable::z, Variable::w, Variable::y_tilde, Variable::z_tilde}) {
        const auto& h = summary.histogram(v);
        for (std::size_t value = 0; value < h.size(); ++value) {
            out << variable_name(v) << ',' << value << ',' << h[value] << '\n';
        }
    }
    for (std::size_t value = 0; value < summary.hist_w_tilde.size(); ++value) {
        out << "W_tilde," << value << ',' << summary.hist_w_tilde[value] << '\n';
    }
}

void write_tail_csv(std::ostream& out, const McSummary& summary, std::int64_t max_n) {
    out << "n,estimate,std_error\n";
    for (std::int64_t n = 0; n <= max_n; ++n) {
        const auto t = tail_estimate(summary, n);
        out << n << ',' << csv::number(t.estimate) << ',' << csv::number(t.std_error) << '\n';
    }
}

void write_cdf_csv(std::ostream& out, const McSummary& summary, std::span<const double> grid) {
    out << "x,cdf\n";
    for (const auto& [x, f] : normalized_cdf(summary, grid)) {
        out << csv::number(x) << ',' << csv::number(f) << '\n';
    }
}

}  // namespace sumset
