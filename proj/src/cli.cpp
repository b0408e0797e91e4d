#include "chain_rivalry/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "chain_rivalry/closed_form.hpp"
#include "chain_rivalry/config.hpp"
#include "chain_rivalry/sweep.hpp"

namespace chain_rivalry {

namespace {

std::string fixed6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string padded(const std::string& text, std::size_t width) {
    return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

void print_equilibrium(std::ostream& out, const EquilibriumOutcome& eq) {
    out << "scenario: " << to_string(eq.scenario) << " (B on " << to_string(platform_of(eq.scenario))
        << ")\n";
    auto row = [&](const char* label, double first, double second) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-10s %14.6f %14.6f\n", label, first, second);
        out << buf;
    };
    char head[128];
    std::snprintf(head, sizeof head, "  %-10s %14s %14s\n", "", "period 1", "period 2");
    out << head;
    row("price A", eq.pA1, eq.pA2);
    row("price B", eq.pB1, eq.pB2);
    row("cutoff", eq.cutoff1, eq.cutoff2);
    row("share A", eq.nA1, eq.nA2);
    row("share B", eq.nB1, eq.nB2);
    row("profit A", eq.profitA1, eq.profitA2);
    row("profit B", eq.profitB1, eq.profitB2);
    out << "  total profit A: " << fixed6(eq.profitA) << "\n";
    out << "  total profit B: " << fixed6(eq.profitB);
    if (eq.profitB_with_subsidy != eq.profitB)
        out << " (with subsidy " << fixed6(eq.profitB_with_subsidy) << ")";
    out << "\n";
}

struct Args {
    std::string config;
    std::string scenario;
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    int steps = 0;
    std::string out_path;
    std::string svg_path;
    bool oracle = false;
    bool sim = false;
    int trials = 100;
    std::uint64_t seed = 42;
    int population = 10000;
};

int cmd_equilibrium(const Args& a, const ModelParams& p, std::ostream& out) {
    if (a.scenario.empty()) {
        bool first = true;
        for (Scenario sc : kAllScenarios) {
            const EquilibriumOutcome eq = equilibrium(p, sc);
            if (!first) out << "\n";
            first = false;
            print_equilibrium(out, eq);
        }
        return kExitOk;
    }
    print_equilibrium(out, equilibrium(p, parse_scenario(a.scenario)));
    return kExitOk;
}

int cmd_compare(const ModelParams& p, std::ostream& out) {
    const AdoptionDecision dec = adoption_decision(p);
    out << "firm B payoffs (subsidies included):\n";
    for (Scenario sc : kAllScenarios) {
        const Platform pl = platform_of(sc);
        out << "  " << padded(std::string(to_string(pl)) + " (" + std::string(to_string(sc)) + ")", 20)
            << fixed6(dec.payoffs[static_cast<std::size_t>(pl)]) << "\n";
    }
    out << "ordering: ";
    for (std::size_t i = 0; i < dec.ranking.size(); ++i) {
        if (i > 0) {
            const double prev = dec.payoffs[static_cast<std::size_t>(dec.ranking[i - 1])];
            const double cur = dec.payoffs[static_cast<std::size_t>(dec.ranking[i])];
            out << (prev == cur ? " = " : " > ");
        }
        out << to_string(dec.ranking[i]);
    }
    out << "\nchosen: " << to_string(dec.chosen) << "\n";
    return kExitOk;
}

int cmd_thresholds(const ModelParams& p, std::ostream& out) {
    const ThresholdReport t = threshold_report(p);
    out << "c2_star  " << fixed6(t.c2_star) << "   (subsidy that moves B to P2)\n";
    out << "c3_star  " << fixed6(t.c3_star) << "   (subsidy that moves B to P3)\n";
    out << "d2_star  " << fixed6(t.d2_star) << "   (chain quality that moves B to P2)\n";
    out << "d3_star  " << fixed6(t.d3_star) << "   (chain quality that moves B to P3)\n";
    out << "c3_star > c2_star: " << (t.c3_star > t.c2_star ? "yes" : "NO") << "\n";
    return kExitOk;
}

int cmd_sweep(const Args& a, const ModelParams& p, std::ostream& out, std::ostream& err) {
    const SweepSpec spec{a.param, a.lo, a.hi, a.steps};
    try {
        spec.check();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    const auto records = run_sweep(p, spec);

    std::ofstream csv(a.out_path, std::ios::binary);
    if (!csv) {
        err << "error: cannot write sweep output '" << a.out_path << "'\n";
        return kExitConfigError;
    }
    csv << sweep_to_csv(records);
    if (!csv.flush()) {
        err << "error: failed writing '" << a.out_path << "'\n";
        return kExitConfigError;
    }
    if (!a.svg_path.empty()) {
        std::ofstream svg(a.svg_path, std::ios::binary);
        if (!svg) {
            err << "error: cannot write chart '" << a.svg_path << "'\n";
            return kExitConfigError;
        }
        svg << sweep_to_svg(records, a.param);
    }

    int invalid = 0;
    for (const auto& rec : records)
        for (const auto& row : rec.rows) invalid += row.valid ? 0 : 1;
    out << "wrote " << records.size() << " sweep points (" << 3 * records.size() << " rows, "
        << invalid << " flagged invalid) to " << a.out_path << "\n";
    if (!a.svg_path.empty()) out << "wrote chart to " << a.svg_path << "\n";
    return kExitOk;
}

int cmd_verify(const Args& a, const ModelParams& p, const CliHooks& hooks, std::ostream& out) {
    VerifyOptions opts;
    // With neither flag given, run both checks.
    opts.oracle = a.oracle || !a.sim;
    opts.sim = a.sim || !a.oracle;
    opts.trials = a.trials;
    opts.seed = a.seed;
    opts.population = a.population;
    opts.closed_form = hooks.closed_form;
    const VerifyReport report = run_verify(p, opts);
    print_report(out, report, opts);
    return report.ok() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks) {
    CLI::App app{"Entrant platform choice under network effects and lock-in", "chain-rivalry"};
    app.require_subcommand(1);

    Args a;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", a.config, "JSON parameter file")->required();
    };

    auto* eq = app.add_subcommand("equilibrium", "Equilibrium prices, adoption and profits");
    add_config(eq);
    eq->add_option("--scenario", a.scenario, "same | compatible | incompatible (default: all)")
        ->check(CLI::IsMember({"same", "compatible", "incompatible"}));

    auto* cmp = app.add_subcommand("compare", "Firm B's payoff on each chain and its choice");
    add_config(cmp);

    auto* thr = app.add_subcommand("thresholds", "Subsidy and quality thresholds");
    add_config(thr);

    auto* sw = app.add_subcommand("sweep", "Sweep one parameter and write CSV (and SVG)");
    add_config(sw);
    sw->add_option("--param", a.param, "parameter to sweep")->required();
    sw->add_option("--lo", a.lo, "range start")->required();
    sw->add_option("--hi", a.hi, "range end")->required();
    sw->add_option("--steps", a.steps, "grid points (>= 2)")->required();
    sw->add_option("--out", a.out_path, "CSV output path")->required();
    sw->add_option("--svg", a.svg_path, "optional SVG chart path");

    auto* ver = app.add_subcommand("verify", "Cross-check closed forms against oracle and simulator");
    add_config(ver);
    ver->add_flag("--oracle", a.oracle, "check against the best-response oracle");
    ver->add_flag("--sim", a.sim, "check against the adoption simulator");
    ver->add_option("--trials", a.trials, "random parameter draws")->check(CLI::NonNegativeNumber);
    ver->add_option("--seed", a.seed, "seed for the draws");
    ver->add_option("--pop", a.population, "simulated users")->check(CLI::Range(2, 100000000));

    std::vector<const char*> argv{"chain-rivalry"};
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        const ModelParams p = load_params(a.config);
        require_valid(p);
        if (eq->parsed()) return cmd_equilibrium(a, p, out);
        if (cmp->parsed()) return cmd_compare(p, out);
        if (thr->parsed()) return cmd_thresholds(p, out);
        if (sw->parsed()) return cmd_sweep(a, p, out, err);
        if (ver->parsed()) return cmd_verify(a, p, hooks, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const InvalidParams& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const CornerEquilibrium& e) {
        err << "error: " << e.what() << "\n";
        return kExitCorner;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace chain_rivalry
