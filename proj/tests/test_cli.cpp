#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sumset/cli.hpp"

using namespace sumset;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "sumset");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("exact subcommands") {
    const auto inc = cli({"exact", "inclusion", "--p", "0.5", "--N", "40"});
    CHECK(inc.code == kExitOk);
    const auto rows = lines(inc.out);
    REQUIRE(rows.size() == 82);
    CHECK(rows[0] == "n,prob_missing");
    CHECK(rows[1] == "0,0.5");
    CHECK(rows[2] == "1,0.75");

    const auto pair = cli({"exact", "pairprob", "--p", "0.5", "--m", "17", "--n", "13"});
    CHECK(pair.code == kExitOk);
    CHECK(lines(pair.out)[1].rfind("17,13,0.03021240234375,", 0) == 0);

    const auto mom = cli({"exact", "moments", "--p", "0.5", "--N", "2"});
    CHECK(mom.code == kExitOk);
    CHECK(lines(mom.out)[1].rfind("0.5,2,1.62500000000000", 0) == 0);

    const auto geo = cli({"exact", "geometry", "--m", "17", "--n", "13"});
    CHECK(lines(geo.out)[1] == "17,13,4,2,2,1,1,0,2,2,0,0");

    const auto orb = cli({"exact", "orbits", "--m", "17", "--n", "12"});
    CHECK(orb.out.find("17,12,16,16-1-11-6-6,1") != std::string::npos);

    CHECK(cli({"exact", "chain", "--p", "0.5", "--k", "10"}).out.find("10,0.140625,") != std::string::npos);
    CHECK(cli({"exact", "pmf", "--p", "0.5", "--N", "2"}).out.find("Y,2,0.375") != std::string::npos);
}

TEST_CASE("series subcommands") {
    const auto sm = cli({"series", "second-moment", "--p", "0.5", "--tol", "1e-10"});
    CHECK(sm.code == kExitOk);
    CHECK(lines(sm.out)[0] == "value,truncation_l,remainder_bound");
    const auto fields = lines(sm.out)[1];
    CHECK(std::stod(fields.substr(fields.rfind(',') + 1)) < 1e-10);

    const auto partial = cli({"series", "partial", "--p", "0.001", "--L", "1"});
    const auto row = lines(partial.out)[1];
    CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(4.0 / 3.0).epsilon(1e-2));

    CHECK(lines(cli({"series", "leading", "--p", "0.5"}).out)[1] == "0.5,59");
    CHECK(lines(cli({"series", "n-eps", "--p", "0.5", "--eps", "0.01"}).out)[1] == "0.5,0.01,76");
    CHECK(lines(cli({"series", "floor-geometric", "--alpha", "0", "--beta", "0.5", "--k", "0", "--l", "3"}).out)[1] ==
          "0,0.5,0,3,1");
}

TEST_CASE("bounds subcommands") {
    const auto t = cli({"bounds", "tail", "--p", "0.5", "--n-max", "3"});
    CHECK(t.code == kExitOk);
    const auto rows = lines(t.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[1] == "0,1,1,0.5,1");
    CHECK(rows[2] == "1,1,1,,");
    CHECK(cli({"bounds", "moments", "--p", "0.5", "--k", "2"}).code == kExitOk);
}

TEST_CASE("mc output is reproducible") {
    const std::vector<std::string> args{"mc", "run", "--p", "0.5", "--N", "30", "--trials", "2000", "--seed", "7"};
    const auto a = cli(args);
    const auto b = cli(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("# p=0.5\n# N=30\n# trials=2000\n# seed=7\n", 0) == 0);

    const auto cdf = cli({"mc", "cdf", "--p", "0.3", "--N", "50", "--trials", "500", "--seed", "7", "--grid-step", "0.5"});
    CHECK(lines(cdf.out).size() == 7);
    const auto tail = cli({"mc", "tail", "--p", "0.3", "--N", "50", "--trials", "500", "--n-max", "4"});
    CHECK(lines(tail.out)[1] == "0,1,0");
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"verify", "--suite", "nope"}).code == kExitUsage);
    CHECK(cli({"exact", "inclusion", "--N", "4"}).code == kExitUsage);
    CHECK(cli({"exact", "inclusion", "--p", "abc", "--N", "4"}).code == kExitUsage);
    CHECK(cli({"exact", "inclusion", "--p", "1.5", "--N", "4"}).code == kExitError);
    CHECK(cli({"exact", "pairprob", "--p", "0.5", "--m", "3", "--n", "5"}).code == kExitError);
    CHECK(cli({"exact", "pmf", "--p", "0.5", "--N", "30"}).code == kExitBudget);
    CHECK(cli({"mc", "run", "--p", "0.5", "--N", "100", "--trials", "1000", "--budget", "10"}).code == kExitBudget);
    CHECK(cli({"verify", "--suite", "bounds", "--budget", "1000"}).code == kExitBudget);
    CHECK(cli({"figures", "--which", "1", "--out", "/proc/no/such/dir"}).code == kExitError);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("figure 1 bundle") {
    const auto dir = std::filesystem::temp_directory_path() / "sumset_cli_test";
    std::filesystem::remove_all(dir);
    CHECK(cli({"figures", "--which", "1", "--out", dir.string()}).code == kExitOk);
    std::ifstream in(dir / "fig1" / "inclusion.csv");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(lines(buf.str()).size() == 82);
    std::filesystem::remove_all(dir);
}
