#include <cmath>

#include "doctest.h"
#include "sumset/bounds.hpp"
#include "sumset/chains.hpp"
#include "sumset/errors.hpp"
#include "sumset/exact.hpp"
#include "sumset/oracle.hpp"
#include "sumset/series.hpp"

using namespace sumset;

TEST_CASE("moment bounds") {
    CHECK(kth_moment_upper(0.5, 0) == 2.0);
    CHECK(kth_moment_upper(0.5, 1) == doctest::Approx(13.9).epsilon(2e-3));
    CHECK(kth_moment_upper(0.5, 1) >= expected_missing_left_limit(0.5));
    CHECK(kth_moment_upper(0.5, 2) == doctest::Approx(193).epsilon(5e-3));
    CHECK(kth_moment_upper(0.5, 2) >= second_moment_limit(0.5, 1e-10).value);
    CHECK(kth_moment_upper_improved(0.5, 2) >= second_moment_limit(0.5, 1e-10).value);
    CHECK(kth_moment_upper_improved(0.5, 1) >= expected_missing_left_limit(0.5));
    CHECK_THROWS_AS(kth_moment_upper(0.5, -1), DomainError);
    CHECK_THROWS_AS(kth_moment_upper_improved(0.5, 0), DomainError);
    CHECK_THROWS_AS(kth_moment_upper(0.5, 400), ResourceError);
}

TEST_CASE("moment generating function bound") {
    const double alpha = spectral_constants(0.5).alpha;
    CHECK(mgf_upper(0.5, 0.0) == 2.0);
    CHECK(mgf_upper(0.5, alpha / 2) == doctest::Approx(4.0));
    CHECK_THROWS_AS(mgf_upper(0.5, alpha), DomainError);
    CHECK_THROWS_AS(mgf_upper(0.5, -alpha), DomainError);
    // Term-by-term series of the moment bounds.
    for (double t : {-0.5 * alpha, 0.25 * alpha, 0.5 * alpha}) {
        double series = 0.0;
        double t_pow_over_fact = 1.0;
        for (int k = 0; k < 60; ++k) {
            series += kth_moment_upper(0.5, k) * t_pow_over_fact;
            t_pow_over_fact *= t / (k + 1);
        }
        CHECK(series == doctest::Approx(mgf_upper(0.5, t)).epsilon(1e-10));
    }
}

TEST_CASE("chernoff tail") {
    const double alpha = spectral_constants(0.5).alpha;
    CHECK(tail_upper_chernoff(0.5, 6, Clamp::no) == 1.0);
    CHECK(tail_upper_chernoff(0.5, 7, Clamp::no) == doctest::Approx(14 * alpha * std::exp(1 - 7 * alpha)));
    CHECK(tail_upper_chernoff(0.5, 50) == doctest::Approx(0.0295).epsilon(1e-2));
    CHECK(tail_upper_chernoff(0.5, 8, Clamp::no) > 1.0);
    CHECK(tail_upper_chernoff(0.5, 8, Clamp::yes) == 1.0);
}

TEST_CASE("improved tail") {
    for (std::int64_t n = 30; n <= 400; ++n) CHECK(tail_upper_improved(0.5, n) < tail_upper_chernoff(0.5, n));
    const double l1 = spectral_constants(0.5).lambda1;
    const double slope = std::log(tail_upper_improved(0.5, 401, Clamp::no)) - std::log(tail_upper_improved(0.5, 400, Clamp::no));
    CHECK(slope == doctest::Approx(std::log(l1)).epsilon(2e-2));
}

TEST_CASE("lower tail") {
    CHECK(tail_lower(0.5, 0) == 0.5);
    CHECK(tail_lower(0.5, 20) == doctest::Approx(std::pow(0.5, 11)));
    CHECK(tail_lower(0.5, 20, LowerBoundVariant::published) == doctest::Approx(std::pow(0.5, 10)));
    CHECK_THROWS_AS(tail_lower(0.5, 3), DomainError);
    CHECK_THROWS_AS(tail_lower(0.5, -2), DomainError);
}

TEST_CASE("improved tail is below chernoff once n is large") {
    for (std::int64_t n = 0; n <= 3000; n += 2) CHECK(tail_upper_improved(0.5, n) <= tail_upper_chernoff(0.5, n));
    for (double p : {0.1, 0.2, 0.8})
        for (std::int64_t n = 1000; n <= 3000; n += 2) CHECK(tail_upper_improved(p, n) <= tail_upper_chernoff(p, n));
    // The additive mean term keeps it above in a window at moderate n for small p.
    CHECK(tail_upper_improved(0.1, 700) > tail_upper_chernoff(0.1, 700));
}

TEST_CASE("bound ordering") {
    for (double p : {0.2, 0.5, 0.8}) {
        for (std::int64_t n = 0; n <= 400; n += 2) {
            CHECK(tail_lower(p, n) <= tail_upper_improved(p, n));
            CHECK(tail_lower(p, n) <= tail_upper_chernoff(p, n));
        }
    }
}

TEST_CASE("bounds hold against the oracle") {
    for (double p : {0.3, 0.5, 0.7}) {
        for (std::int64_t big_n : {6, 10, 14}) {
            const auto d = exact_distribution(Params(p, big_n));
            for (std::int64_t n = 0; n <= big_n; n += 2) {
                double tail = 0.0;
                for (std::size_t v = static_cast<std::size_t>(n); v < d.y.size(); ++v) tail += d.y[v];
                CHECK(tail >= tail_lower(p, n) - 1e-15);
                CHECK(tail <= tail_upper_chernoff(p, n) + 1e-15);
                CHECK(tail <= tail_upper_improved(p, n) + 1e-15);
            }
        }
    }
}
