#include "sumset/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "sumset/bounds.hpp"
#include "sumset/chains.hpp"
#include "sumset/csv.hpp"
#include "sumset/errors.hpp"
#include "sumset/exact.hpp"
#include "sumset/montecarlo.hpp"
#include "sumset/oracle.hpp"
#include "sumset/orbits.hpp"
#include "sumset/series.hpp"
#include "sumset/verify.hpp"

namespace sumset {

namespace {

using csv::number;
namespace fs = std::filesystem;

struct Flags {
    double p = 0.5;
    std::int64_t big_n = 0;
    std::int64_t m = 1;
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t terms = 1;
    std::int64_t n_max = 60;
    double tol = 1e-10;
    double eps = 0.01;
    double alpha = 0.5;
    double beta = 0.5;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
    std::uint32_t shards = 16;
    unsigned threads = 0;
    std::string out_path;
    std::string suite = "all";
    int which = 1;
    double budget = 1e10;
    double grid_max = 2.5;
    double grid_step = 0.01;
};

class FileError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_file(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw FileError("cannot write " + path.string());
    return f;
}

// Writes to --out when given, else to the default stream.
void emit(const Flags& f, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (f.out_path.empty()) {
        body(out);
        return;
    }
    auto file = open_file(f.out_path);
    body(file);
}

McConfig mc_config(const Flags& f, double p, std::int64_t big_n) {
    McConfig c{Params(p, big_n)};
    c.trials = f.trials;
    c.seed = f.seed;
    c.shards = static_cast<std::uint32_t>(std::min<std::uint64_t>(f.shards, f.trials));
    c.threads = f.threads;
    c.work_budget = f.budget;
    return c;
}

std::vector<double> cdf_grid(const Flags& f) {
    std::vector<double> grid;
    const auto steps = static_cast<std::int64_t>(std::llround(f.grid_max / f.grid_step));
    for (std::int64_t i = 0; i <= steps; ++i) grid.push_back(static_cast<double>(i) * f.grid_step);
    return grid;
}

void write_inclusion(std::ostream& out, const Params& params) {
    out << "n,prob_missing\n";
    for (std::int64_t s = 0; s <= 2 * params.n_max(); ++s) out << s << ',' << number(missing_prob(s, params)) << '\n';
}

void write_tail_bounds(std::ostream& ub, std::ostream& lb, double p, std::int64_t n_max) {
    ub << "n,chernoff,improved\n";
    lb << "n,rigorous,published\n";
    for (std::int64_t n = 0; n <= n_max; ++n) {
        ub << n << ',' << number(tail_upper_chernoff(p, n)) << ',' << number(tail_upper_improved(p, n)) << '\n';
        if (n % 2 == 0) {
            lb << n << ',' << number(tail_lower(p, n, LowerBoundVariant::rigorous)) << ','
               << number(tail_lower(p, n, LowerBoundVariant::published)) << '\n';
        }
    }
}

void figure(const Flags& f, std::ostream& log) {
    const fs::path dir = fs::path(f.out_path.empty() ? "figures" : f.out_path) / ("fig" + std::to_string(f.which));
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw FileError("cannot create " + dir.string() + ": " + ec.message());

    switch (f.which) {
        case 1: {
            auto file = open_file(dir / "inclusion.csv");
            write_inclusion(file, Params(0.5, 40));
            break;
        }
        case 2: {
            const double p = 0.5;
            const auto summary = run(mc_config(f, p, 200));
            auto mc = open_file(dir / "mc.csv");
            write_tail_csv(mc, summary, f.n_max);
            auto ub = open_file(dir / "ub.csv");
            auto lb = open_file(dir / "lb.csv");
            write_tail_bounds(ub, lb, p, f.n_max);
            break;
        }
        case 3: {
            const std::int64_t big_n = 400;
            auto series = open_file(dir / "series.csv");
            auto mc = open_file(dir / "mc.csv");
            auto approx = open_file(dir / "approx.csv");
            auto expected = open_file(dir / "expected_error.csv");
            series << "p,second_moment,remainder_bound\n";
            mc << "p,second_moment,random_error,trials\n";
            approx << "p,leading_order\n";
            expected << "p,random_error,systematic_error,expected_error\n";
            for (double p : {0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
                const auto limit = second_moment_limit(p, f.tol);
                const auto summary = run(mc_config(f, p, big_n));
                const double random = mc_error_estimate(summary);
                const double systematic = tail_remainder_bound(p, big_n);
                series << number(p) << ',' << number(limit.value) << ',' << number(limit.remainder_bound) << '\n';
                mc << number(p) << ',' << number(summary.second_moment(Variable::y)) << ',' << number(random) << ','
                   << f.trials << '\n';
                approx << number(p) << ',' << number(leading_order_approx(p)) << '\n';
                expected << number(p) << ',' << number(random) << ',' << number(systematic) << ','
                         << number(std::hypot(random, systematic)) << '\n';
            }
            break;
        }
        case 4: {
            const auto grid = cdf_grid(f);
            for (double p : {0.05, 0.08, 0.16, 0.24, 0.32}) {
                const auto summary = run(mc_config(f, p, 800));
                auto file = open_file(dir / fmt::format("cdf_p{:g}.csv", p));
                write_cdf_csv(file, summary, grid);
            }
            break;
        }
        default: throw DomainError("--which must be 1, 2, 3 or 4");
    }
    log << "wrote " << dir.string() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random sumsets A+A: exact formulas, series, bounds, Monte Carlo and oracle checks", "sumset"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    std::function<int()> action;

    auto add_p = [&](CLI::App* c) {
        c->add_option("--p", f.p, "inclusion probability in (0,1)")->required();
    };
    auto add_mc = [&](CLI::App* c) {
        add_p(c);
        c->add_option("--N", f.big_n, "upper endpoint N")->required()->check(CLI::NonNegativeNumber);
        c->add_option("--trials", f.trials, "number of Monte Carlo trials")->capture_default_str();
        c->add_option("--seed", f.seed, "random seed")->capture_default_str();
        c->add_option("--shards", f.shards, "number of shards")->capture_default_str();
        c->add_option("--threads", f.threads, "worker threads (0 = all cores)")->capture_default_str();
        c->add_option("--out", f.out_path, "output file (default: standard output)");
    };
    app.add_option("--budget", f.budget, "cap on elementary operations for Monte Carlo and verification")
        ->capture_default_str();

    // exact
    auto* exact = app.add_subcommand("exact", "closed-form finite-N quantities");
    exact->require_subcommand(1);
    auto* inclusion = exact->add_subcommand("inclusion", "P(n not in A+A) for n = 0..2N");
    add_p(inclusion);
    inclusion->add_option("--N", f.big_n)->required()->check(CLI::NonNegativeNumber);
    inclusion->callback([&] {
        action = [&] {
            write_inclusion(out, Params(f.p, f.big_n));
            return kExitOk;
        };
    });

    auto* pairprob = exact->add_subcommand("pairprob", "P(m, n not in A+A)");
    add_p(pairprob);
    pairprob->add_option("--m", f.m)->required();
    pairprob->add_option("--n", f.n)->required();
    pairprob->add_option("--N", f.big_n, "upper endpoint (default m)");
    pairprob->callback([&] {
        action = [&] {
            const Params params(f.p, std::max(f.big_n, f.m));
            out << "m,n,prob_missing,upper_bound\n"
                << f.m << ',' << f.n << ',' << number(pair_missing_prob(f.m, f.n, params)) << ','
                << number(pair_missing_prob_upper(f.m, f.n, f.p)) << '\n';
            return kExitOk;
        };
    });

    auto* moments = exact->add_subcommand("moments", "E[Y], E[W] at N and as N -> infinity");
    add_p(moments);
    moments->add_option("--N", f.big_n)->required()->check(CLI::NonNegativeNumber);
    moments->callback([&] {
        action = [&] {
            const Params params(f.p, f.big_n);
            out << "p,N,expected_y,expected_w,expected_y_limit,expected_w_limit\n"
                << number(f.p) << ',' << f.big_n << ',' << number(expected_missing_left(params)) << ','
                << number(expected_missing_total(params)) << ',' << number(expected_missing_left_limit(f.p)) << ','
                << number(expected_missing_total_limit(f.p)) << '\n';
            return kExitOk;
        };
    });

    auto* pmf = exact->add_subcommand("pmf", "exact distributions by enumeration (N <= 22)");
    add_p(pmf);
    pmf->add_option("--N", f.big_n)->required()->check(CLI::NonNegativeNumber);
    pmf->callback([&] {
        action = [&] {
            write_pmf_csv(out, exact_distribution(Params(f.p, f.big_n)));
            return kExitOk;
        };
    });

    auto* chain = exact->add_subcommand("chain", "chain probabilities a_0..a_k");
    add_p(chain);
    chain->add_option("--k", f.k)->required()->check(CLI::NonNegativeNumber);
    chain->callback([&] {
        action = [&] {
            const ChainProbTable table(f.p, f.k);
            out << "k,a_k,closed_form\n";
            for (std::int64_t i = 0; i <= f.k; ++i) {
                out << i << ',' << number(table.at(i)) << ',' << number(chain_prob_closed(f.p, i)) << '\n';
            }
            return kExitOk;
        };
    });

    auto* spectral = exact->add_subcommand("spectral", "roots and decay constants of the chain recurrence");
    add_p(spectral);
    spectral->callback([&] {
        action = [&] {
            const auto s = spectral_constants(f.p);
            out << "p,lambda1,lambda2,c1,c2,alpha,alpha_prime\n"
                << number(f.p) << ',' << number(s.lambda1) << ',' << number(s.lambda2) << ',' << number(s.c1) << ','
                << number(s.c2) << ',' << number(s.alpha) << ',' << number(s.alpha_prime) << '\n';
            return kExitOk;
        };
    });

    auto* geometry = exact->add_subcommand("geometry", "twist degree and orbit counts of a pair");
    geometry->add_option("--m", f.m)->required();
    geometry->add_option("--n", f.n)->required();
    geometry->callback([&] {
        action = [&] {
            const auto g = pair_geometry(f.m, f.n);
            out << "m,n,l,d1,d2,s_m,s_n,s_l,loopless_long,loopless_short,looped_long,looped_short\n"
                << g.m << ',' << g.n << ',' << g.l << ',' << g.d1 << ',' << g.d2 << ',' << g.parity[0] << ','
                << g.parity[1] << ',' << g.parity[2] << ',' << g.loopless_long << ',' << g.loopless_short << ','
                << g.looped_long << ',' << g.looped_short << '\n';
            return kExitOk;
        };
    });

    auto* orbits = exact->add_subcommand("orbits", "orbit inventory of a pair");
    orbits->add_option("--m", f.m)->required();
    orbits->add_option("--n", f.n)->required();
    orbits->callback([&] {
        action = [&] {
            write_orbit_csv(out, f.m, f.n);
            return kExitOk;
        };
    });

    // series
    auto* series = app.add_subcommand("series", "N -> infinity second moment and related series");
    series->require_subcommand(1);
    auto* second = series->add_subcommand("second-moment", "lim E[Y^2]");
    add_p(second);
    second->add_option("--tol", f.tol)->capture_default_str();
    second->callback([&] {
        action = [&] {
            const auto r = second_moment_limit(f.p, f.tol);
            out << "value,truncation_l,remainder_bound\n"
                << number(r.value) << ',' << r.truncation_l << ',' << number(r.remainder_bound) << '\n';
            return kExitOk;
        };
    });

    auto* partial = series->add_subcommand("partial", "p^4 times the L-th partial sum");
    add_p(partial);
    partial->add_option("--L", f.terms)->required();
    partial->callback([&] {
        action = [&] {
            out << "p,L,value\n" << number(f.p) << ',' << f.terms << ',' << number(second_moment_partial(f.p, f.terms)) << '\n';
            return kExitOk;
        };
    });

    auto* leading = series->add_subcommand("leading", "4/p^4 - 2/p^2 + 1/p + 1");
    add_p(leading);
    leading->callback([&] {
        action = [&] {
            out << "p,value\n" << number(f.p) << ',' << number(leading_order_approx(f.p)) << '\n';
            return kExitOk;
        };
    });

    auto* variance = series->add_subcommand("variance", "lim Var(Y) and Var(Y)/E[Y]^2");
    add_p(variance);
    variance->add_option("--tol", f.tol)->capture_default_str();
    variance->callback([&] {
        action = [&] {
            const auto v = variance_limit(f.p, f.tol);
            out << "p,variance,ratio\n" << number(f.p) << ',' << number(v.variance) << ',' << number(v.ratio) << '\n';
            return kExitOk;
        };
    });

    auto* total = series->add_subcommand("total", "lim E[W^2]");
    add_p(total);
    total->add_option("--tol", f.tol)->capture_default_str();
    total->callback([&] {
        action = [&] {
            out << "p,value\n" << number(f.p) << ',' << number(total_second_moment_limit(f.p, f.tol)) << '\n';
            return kExitOk;
        };
    });

    auto* tail = series->add_subcommand("tail", "bound on lim E[Y^2] - E[Y^2] at finite N");
    add_p(tail);
    tail->add_option("--N", f.big_n)->required()->check(CLI::NonNegativeNumber);
    tail->callback([&] {
        action = [&] {
            out << "p,N,value\n" << number(f.p) << ',' << f.big_n << ',' << number(tail_remainder_bound(f.p, f.big_n)) << '\n';
            return kExitOk;
        };
    });

    auto* n_eps = series->add_subcommand("n-eps", "rough N for a target accuracy");
    add_p(n_eps);
    n_eps->add_option("--eps", f.eps)->required();
    n_eps->callback([&] {
        action = [&] {
            out << "p,eps,N\n" << number(f.p) << ',' << number(f.eps) << ',' << n_for_tolerance(f.p, f.eps) << '\n';
            return kExitOk;
        };
    });

    auto* floor_geo = series->add_subcommand("floor-geometric", "sum_n alpha^n beta^floor(((l-1)n+k)/l)");
    floor_geo->add_option("--alpha", f.alpha)->required();
    floor_geo->add_option("--beta", f.beta)->required();
    floor_geo->add_option("--k", f.k)->required();
    floor_geo->add_option("--l", f.terms)->required();
    floor_geo->callback([&] {
        action = [&] {
            out << "alpha,beta,k,l,value\n"
                << number(f.alpha) << ',' << number(f.beta) << ',' << f.k << ',' << f.terms << ','
                << number(floor_geometric_sum(f.alpha, f.beta, f.k, f.terms)) << '\n';
            return kExitOk;
        };
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "moment and tail bounds for Y");
    bounds->require_subcommand(1);
    auto* tail_bounds = bounds->add_subcommand("tail", "upper and lower tail bounds for n = 0..n-max");
    add_p(tail_bounds);
    tail_bounds->add_option("--n-max", f.n_max)->capture_default_str()->check(CLI::NonNegativeNumber);
    tail_bounds->callback([&] {
        action = [&] {
            out << "n,chernoff,improved,lower_rigorous,lower_published\n";
            for (std::int64_t n = 0; n <= f.n_max; ++n) {
                out << n << ',' << number(tail_upper_chernoff(f.p, n)) << ',' << number(tail_upper_improved(f.p, n)) << ',';
                if (n % 2 == 0) {
                    out << number(tail_lower(f.p, n, LowerBoundVariant::rigorous)) << ','
                        << number(tail_lower(f.p, n, LowerBoundVariant::published));
                } else {
                    out << ',';
                }
                out << '\n';
            }
            return kExitOk;
        };
    });

    auto* moment_bounds = bounds->add_subcommand("moments", "bounds on E[Y^k] for k = 1..k");
    add_p(moment_bounds);
    moment_bounds->add_option("--k", f.k)->required()->check(CLI::PositiveNumber);
    moment_bounds->callback([&] {
        action = [&] {
            out << "k,crude,improved\n";
            for (std::int64_t k = 1; k <= f.k; ++k) {
                out << k << ',' << number(kth_moment_upper(f.p, k)) << ',' << number(kth_moment_upper_improved(f.p, k)) << '\n';
            }
            return kExitOk;
        };
    });

    // mc
    auto* mc = app.add_subcommand("mc", "seeded Monte Carlo estimation");
    mc->require_subcommand(1);
    auto* mc_run = mc->add_subcommand("run", "histograms of Y, Z, W and the truncated fringes");
    add_mc(mc_run);
    mc_run->callback([&] {
        action = [&] {
            const auto s = run(mc_config(f, f.p, f.big_n));
            emit(f, out, [&](std::ostream& o) { write_summary_csv(o, s); });
            return kExitOk;
        };
    });

    auto* mc_tail = mc->add_subcommand("tail", "empirical P(Y >= n)");
    add_mc(mc_tail);
    mc_tail->add_option("--n-max", f.n_max)->capture_default_str();
    mc_tail->callback([&] {
        action = [&] {
            const auto s = run(mc_config(f, f.p, f.big_n));
            emit(f, out, [&](std::ostream& o) { write_tail_csv(o, s, f.n_max); });
            return kExitOk;
        };
    });

    auto* mc_cdf = mc->add_subcommand("cdf", "empirical P(Y <= x E[Y]) on a grid");
    add_mc(mc_cdf);
    mc_cdf->add_option("--grid-max", f.grid_max)->capture_default_str();
    mc_cdf->add_option("--grid-step", f.grid_step)->capture_default_str()->check(CLI::PositiveNumber);
    mc_cdf->callback([&] {
        action = [&] {
            const auto s = run(mc_config(f, f.p, f.big_n));
            const auto grid = cdf_grid(f);
            emit(f, out, [&](std::ostream& o) { write_cdf_csv(o, s, grid); });
            return kExitOk;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "run acceptance checks");
    verify->add_option("--suite", f.suite)->check(CLI::IsMember({"oracle", "series", "bounds", "all"}))->capture_default_str();
    verify->add_option("--seed", f.seed)->capture_default_str();
    verify->add_option("--threads", f.threads)->capture_default_str();
    verify->callback([&] {
        action = [&] {
            VerifyOptions options;
            options.budget = f.budget;
            options.seed = f.seed;
            options.threads = f.threads;
            const auto report = run_suite(*parse_suite(f.suite), options, &out);
            if (report.budget_exceeded) return kExitBudget;
            return report.all_passed() ? kExitOk : kExitError;
        };
    });

    // figures
    auto* figures = app.add_subcommand("figures", "CSV data behind the four figures");
    figures->add_option("--which", f.which)->required()->check(CLI::Range(1, 4));
    figures->add_option("--out", f.out_path, "output directory")->capture_default_str();
    figures->add_option("--trials", f.trials, "Monte Carlo trials per curve (figures 2-4)");
    figures->add_option("--seed", f.seed)->capture_default_str();
    figures->add_option("--threads", f.threads)->capture_default_str();
    figures->add_option("--tol", f.tol, "series tolerance (figure 3)")->capture_default_str();
    figures->callback([&] {
        action = [&] {
            if (f.which == 2 && !figures->count("--trials")) f.trials = 1'000'000;
            f.n_max = 60;
            figure(f, out);
            return kExitOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const ResourceError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace sumset
