#pragma once

/**
 * @file montecarlo.hpp
 * @brief Seeded, shardable Monte Carlo estimation of the missing-summand distributions.
 *
 * Random stream: every trial t owns a SplitMix64 stream whose starting state
 * is a 64-bit mix of (seed, t). Element i of the trial's subset is included
 * iff the i-th output of that stream is below round(p * 2^64). Trials never
 * share state, so the summary depends only on (p, N, trials, seed): neither the
 * shard count nor the number of worker threads changes a single bit.
 *
 * Shards are contiguous trial ranges; their integer histograms are summed.
 */

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "sumset/model.hpp"

namespace sumset {

struct McConfig {
    Params params;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint32_t shards = 1;
    unsigned threads = 1;          ///< worker threads; 0 = hardware concurrency
    double work_budget = 1e12;     ///< cap on trials * (N+1)

    /// DomainError when trials or shards are zero or shards > trials.
    void validate() const;
};

struct McSummary {
    McConfig config;
    std::vector<std::uint64_t> hist_y;        ///< size N+2
    std::vector<std::uint64_t> hist_z;        ///< size N+1
    std::vector<std::uint64_t> hist_w;        ///< size 2N+2
    std::vector<std::uint64_t> hist_y_tilde;  ///< size floor(N/2)+2
    std::vector<std::uint64_t> hist_z_tilde;  ///< size 2N-floor(3N/2)+1
    std::vector<std::uint64_t> hist_w_tilde;  ///< y_tilde + z_tilde

    explicit McSummary(const McConfig& cfg);

    const std::vector<std::uint64_t>& histogram(Variable v) const;
    std::uint64_t trials() const noexcept { return config.trials; }

    double mean(Variable v) const;
    double second_moment(Variable v) const;
    double variance(Variable v) const;  ///< unbiased sample variance
    double std_error(Variable v) const;  ///< standard error of the sample mean

    void merge(const McSummary& other);
    friend bool operator==(const McSummary& a, const McSummary& b);
};

/// Bernoulli threshold round(p * 2^64), saturated at 2^64 - 1.
std::uint64_t bernoulli_threshold(double p);

/// Fills subset (length N+1) for one trial of the documented stream.
void sample_subset(std::uint64_t seed, std::uint64_t trial, std::uint64_t threshold, BitVector& subset);

/// ResourceError when trials * (N+1) exceeds config.work_budget.
McSummary run(const McConfig& config);

struct TailEstimate {
    double estimate;
    double std_error;  ///< sqrt(p_hat (1 - p_hat) / M)
};

/// Empirical P(Y >= n).
TailEstimate tail_estimate(const McSummary& summary, std::int64_t n);

/// (x, P_hat(Y <= x * Ybar)) for each grid point; DomainError if Ybar == 0.
std::vector<std::pair<double, double>> normalized_cdf(const McSummary& summary, std::span<const double> grid);

/// max_m |P_hat(W=m) - sum_y P_hat(Y=y) P_hat(Z=m-y)|.
double convolution_check(const McSummary& summary);
/// Same on the truncated fringes (Y~, Z~), which are exactly independent.
double convolution_check_tilde(const McSummary& summary);

/// 2 E_hat[Y^2] / sqrt(M).
double mc_error_estimate(const McSummary& summary);

/// Comment header with (p, N, M, seed, shards) then "variable,value,count".
void write_summary_csv(std::ostream& out, const McSummary& summary);
/// "n,estimate,std_error" for n = 0..max_n.
void write_tail_csv(std::ostream& out, const McSummary& summary, std::int64_t max_n);
/// "x,cdf".
void write_cdf_csv(std::ostream& out, const McSummary& summary, std::span<const double> grid);

}  // namespace sumset
