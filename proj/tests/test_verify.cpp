#include <sstream>

#include "doctest.h"
#include "sumset/errors.hpp"
#include "sumset/verify.hpp"

using namespace sumset;

TEST_CASE("suites") {
    CHECK(parse_suite("oracle") == Suite::oracle);
    CHECK_FALSE(parse_suite("everything").has_value());
    CHECK(suite_criteria(Suite::oracle) == std::vector<int>{1, 2, 3, 4, 9});
    CHECK(suite_criteria(Suite::series) == std::vector<int>{5, 6, 7});
    CHECK(suite_criteria(Suite::bounds) == std::vector<int>{8});
    CHECK(suite_criteria(Suite::all).size() == kCriterionCount);
}

TEST_CASE("budget produces a partial report") {
    VerifyOptions o;
    o.budget = criterion_work(5) + criterion_work(6) / 2;
    std::ostringstream log;
    const auto report = run_suite(Suite::series, o, &log);
    REQUIRE(report.results.size() == 3);
    CHECK(report.budget_exceeded);
    CHECK_FALSE(report.results[0].skipped);
    CHECK(report.results[0].passed);
    CHECK(report.results[1].skipped);
    CHECK(report.results[2].skipped);
    CHECK_FALSE(report.all_passed());
    CHECK(log.str().rfind("PASS [ 5]", 0) == 0);
}

TEST_CASE("unknown criterion") {
    CHECK_THROWS_AS(run_criterion(11, VerifyOptions{}), DomainError);
    CHECK_THROWS_AS(criterion_work(0), DomainError);
}
