#include "chain_rivalry/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "chain_rivalry/adoption_sim.hpp"
#include "chain_rivalry/config.hpp"
#include "chain_rivalry/oracle.hpp"

namespace chain_rivalry {

double uniform_open(std::mt19937_64& rng, double lo, double hi) {
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

ModelParams random_valid_params(std::mt19937_64& rng) {
    for (;;) {
        ModelParams p;
        p.n1 = uniform_open(rng, 1.0, 50.0);
        p.n2 = p.n3 = uniform_open(rng, 0.0, p.n1);
        p.s = uniform_open(rng, 0.5, 20.0);
        p.alpha = uniform_open(rng, 0.0, p.s / (2.0 * p.n1 + 1.0));
        const double bound = 4.0 * p.s + 4.0 * p.alpha * (1.0 + p.n1 + p.n2);
        p.k = uniform_open(rng, bound, 2.0 * bound);
        // Rounding at the open ends can touch a boundary; draw again then.
        if (validate_params(p).ok()) return p;
    }
}

double oracle_tolerance(double expected) { return std::max(1e-3 * std::abs(expected), 1e-4); }

namespace {

class Checker {
public:
    explicit Checker(VerifyReport& report) : report_(report) {}

    void check(int draw, const ModelParams& p, const std::string& name, double expected,
               double actual, double tolerance) {
        DeviationStat& st = stat(name);
        const double abs_dev = std::abs(actual - expected);
        const double rel_dev = expected != 0.0 ? abs_dev / std::abs(expected) : abs_dev;
        st.max_abs = std::max(st.max_abs, abs_dev);
        st.max_rel = std::max(st.max_rel, rel_dev);
        ++st.checks;
        if (!(abs_dev <= tolerance))
            report_.failures.push_back({draw, name, expected, actual, tolerance, p});
    }

private:
    DeviationStat& stat(const std::string& name) {
        for (auto& st : report_.stats)
            if (st.name == name) return st;
        report_.stats.push_back({name, 0.0, 0.0, 0});
        return report_.stats.back();
    }

    VerifyReport& report_;
};

void verify_point(int draw, const ModelParams& p, const VerifyOptions& opts, Checker& checker) {
    for (Scenario sc : kAllScenarios) {
        const EquilibriumOutcome cf = opts.closed_form(p, sc);
        const std::string tag(to_string(sc));

        if (opts.oracle) {
            const OracleResult orc = oracle_equilibrium(p, sc, PriceGrid::default_for(p));
            const std::string pre = "oracle." + tag + ".";
            auto near = [&](const char* q, double expected, double actual) {
                checker.check(draw, p, pre + q, expected, actual, oracle_tolerance(expected));
            };
            checker.check(draw, p, pre + "converged", 1.0, orc.converged ? 1.0 : 0.0, 0.0);
            near("pA1", cf.pA1, orc.pA1);
            near("pB1", cf.pB1, orc.pB1);
            near("pA2", cf.pA2, orc.pA2);
            near("pB2", cf.pB2, orc.pB2);
            near("cutoff1", cf.cutoff1, orc.cutoff1);
            near("cutoff2", cf.cutoff2, orc.cutoff2);
            near("profitA", cf.profitA, orc.profitA);
            near("profitB", cf.profitB, orc.profitB);
            checker.check(draw, p, pre + "conservation_failures", 0.0,
                          static_cast<double>(orc.conservation_failures), 0.0);
        }

        if (opts.sim) {
            const GameSimulation sim =
                simulate_game(p, sc, {cf.pA1, cf.pB1, cf.pA2, cf.pB2}, opts.population);
            const double inv_m = 1.0 / opts.population;
            const std::string pre = "sim." + tag + ".";
            checker.check(draw, p, pre + "converged", 1.0, sim.converged() ? 1.0 : 0.0, 0.0);
            checker.check(draw, p, pre + "cutoff1", cf.cutoff1, sim.period1.cutoff, inv_m + 1e-6);
            checker.check(draw, p, pre + "cutoff2", cf.cutoff2, sim.period2.cutoff, inv_m + 1e-6);
            checker.check(draw, p, pre + "revenueA", cf.profitA, sim.revenueA(),
                          (std::abs(cf.pA1) + std::abs(cf.pA2)) * inv_m + 1e-6);
            checker.check(draw, p, pre + "revenueB", cf.profitB, sim.revenueB(),
                          (std::abs(cf.pB1) + std::abs(cf.pB2)) * inv_m + 1e-6);
            if (has_lock_in(sc)) {
                checker.check(draw, p, pre + "switchers", 0.0, sim.switchers, 0.0);
                checker.check(draw, p, pre + "retention_gapA", sim.period1.nA, sim.period2.nA, 0.0);
                checker.check(draw, p, pre + "retention_gapB", sim.period1.nB, sim.period2.nB, 0.0);
            }
        }
    }
}

}  // namespace

VerifyReport run_verify(const ModelParams& config, const VerifyOptions& opts) {
    VerifyReport report;
    Checker checker(report);
    verify_point(-1, config, opts, checker);
    report.draws = 1;

    std::mt19937_64 rng(opts.seed);
    for (int t = 0; t < opts.trials; ++t) {
        verify_point(t, random_valid_params(rng), opts, checker);
        ++report.draws;
    }
    return report;
}

void print_report(std::ostream& os, const VerifyReport& report, const VerifyOptions& opts) {
    char line[256];
    os << "verified " << report.draws << " parameter point(s) (config + " << opts.trials
       << " draws, seed " << opts.seed << ")";
    if (opts.sim) os << ", population " << opts.population;
    os << "\n";
    std::snprintf(line, sizeof line, "%-42s %14s %14s %7s\n", "quantity", "max_abs_dev",
                  "max_rel_dev", "checks");
    os << line;
    for (const auto& st : report.stats) {
        std::snprintf(line, sizeof line, "%-42s %14.6e %14.6e %7ld\n", st.name.c_str(), st.max_abs,
                      st.max_rel, st.checks);
        os << line;
    }
    if (report.ok()) {
        os << "result: PASS\n";
        return;
    }
    os << "result: FAIL (" << report.failures.size() << " tolerance breach(es))\n";
    for (const auto& f : report.failures) {
        std::snprintf(line, sizeof line, "  %s: expected %.9g, got %.9g (tolerance %.3g) at ",
                      f.quantity.c_str(), f.expected, f.actual, f.tolerance);
        os << line << (f.draw < 0 ? std::string("config") : "draw " + std::to_string(f.draw))
           << " params ";
        os << params_to_json_text(f.params) << "\n";
    }
}

}  // namespace chain_rivalry
