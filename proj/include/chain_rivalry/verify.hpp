#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "chain_rivalry/closed_form.hpp"
#include "chain_rivalry/model.hpp"

namespace chain_rivalry {

using ClosedFormSolver = std::function<EquilibriumOutcome(const ModelParams&, Scenario)>;

/// Uniform draw in (lo, hi) from the top 53 bits of the generator, so the
/// sequence is the same on every standard library.
double uniform_open(std::mt19937_64& rng, double lo, double hi);

/// Baseline parameters satisfying Assumption 1 by construction: n1 in [1,50],
/// n2 = n3 in [0,n1), s in [0.5,20], alpha in (0, s/(2n1+1)), and k in
/// (bound, 2*bound) with bound = 4s + 4alpha(1+n1+n2).
ModelParams random_valid_params(std::mt19937_64& rng);

struct VerifyOptions {
    bool oracle = true;
    bool sim = true;
    int trials = 100;
    std::uint64_t seed = 42;
    int population = 10000;
    ClosedFormSolver closed_form = [](const ModelParams& p, Scenario sc) { return equilibrium(p, sc); };
};

/// Running max of absolute and relative deviations for one checked quantity.
struct DeviationStat {
    std::string name;  // e.g. "oracle.incompatible.pA1"
    double max_abs = 0;
    double max_rel = 0;
    long checks = 0;
};

struct VerifyFailure {
    int draw = -1;  // -1 is the config itself
    std::string quantity;
    double expected = 0;
    double actual = 0;
    double tolerance = 0;
    ModelParams params;
};

struct VerifyReport {
    int draws = 0;  // parameter points checked, config included
    std::vector<DeviationStat> stats;
    std::vector<VerifyFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// Oracle tolerance: 1e-3 relative or 1e-4 absolute, whichever is looser.
double oracle_tolerance(double expected);

/// Checks closed forms against the oracle (`opts.oracle`) and the adoption
/// simulator (`opts.sim`) on `config` and on `opts.trials` seeded draws.
VerifyReport run_verify(const ModelParams& config, const VerifyOptions& opts);

void print_report(std::ostream& os, const VerifyReport& report, const VerifyOptions& opts);

}  // namespace chain_rivalry
