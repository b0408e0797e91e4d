#pragma once

#include <array>

#include "chain_rivalry/model.hpp"

namespace chain_rivalry {

/// Subgame-perfect prices, adoption and profits for one platform choice.
struct EquilibriumOutcome {
    Scenario scenario = Scenario::SameChain;
    double pA1 = 0, pB1 = 0, pA2 = 0, pB2 = 0;
    double cutoff1 = 0, cutoff2 = 0;
    double nA1 = 0, nB1 = 0, nA2 = 0, nB2 = 0;
    double profitA1 = 0, profitA2 = 0, profitB1 = 0, profitB2 = 0;
    double profitA = 0, profitB = 0;   // two-period totals, no subsidy
    double profitB_with_subsidy = 0;
};

// Each equilibrium function validates `p` (InvalidParams) and rejects
// non-interior outcomes (CornerEquilibrium).

/// Both firms on P1: p = s in both periods, even split.
EquilibriumOutcome same_chain_equilibrium(const ModelParams& p);

/// B on P2: the one-shot Bertrand game with separate networks, played twice.
EquilibriumOutcome compatible_equilibrium(const ModelParams& p);

/// B on P3: users are locked in after period 1. Each firm extracts its
/// retained base in period 2 at the full-retention price and competes that
/// rent away in period 1, so period-1 prices can be negative.
EquilibriumOutcome incompatible_equilibrium(const ModelParams& p);

EquilibriumOutcome equilibrium(const ModelParams& p, Scenario sc);

struct SubsidyThresholds {
    double c2_star = 0;
    double c3_star = 0;
};

struct QualityThresholds {
    double d2_star = 0;
    double d3_star = 0;
};

struct ThresholdReport {
    double c2_star = 0, c3_star = 0, d2_star = 0, d3_star = 0;
};

/// Smallest one-time transfer that makes P2 (P3) as attractive to B as P1.
/// Evaluated in the baseline game (d = 0, no subsidies).
SubsidyThresholds subsidy_threshold(const ModelParams& p);

/// Extra user utility on P2 (P3) at which B's payoff there equals its P1
/// payoff, found by bisection on the payoff gap.
QualityThresholds quality_threshold(const ModelParams& p);

ThresholdReport threshold_report(const ModelParams& p);

struct AdoptionDecision {
    Platform chosen = Platform::P1;
    std::array<double, 3> payoffs{};     // indexed by Platform, subsidies included
    std::array<Platform, 3> ranking{};   // best first, ties P1 > P2 > P3
};

/// Argmax over per-platform payoffs (indexed by Platform), ties P1 > P2 > P3.
AdoptionDecision decide(const std::array<double, 3>& payoffs);

AdoptionDecision adoption_decision(const ModelParams& p);

struct AdoptionSlopes {
    double compatible = 0;    // d(1 - x^C)/dd
    double incompatible = 0;  // d(1 - x^I)/dd
};

AdoptionSlopes adoption_sensitivity(const ModelParams& p);

/// Interior cutoff formulas, exposed for finite-difference checks. No
/// validation and no interior check.
double compatible_cutoff(const ModelParams& p, double d);
double incompatible_cutoff(const ModelParams& p, double d);

/// B's two-period profit as a function of its chain quality, without the
/// interior check. These are the gap functions behind quality_threshold.
double compatible_profit_b(const ModelParams& p, double d);
double incompatible_profit_b(const ModelParams& p, double d);

struct BisectionOptions {
    double tolerance = 1e-9;
    int max_iterations = 200;
};

/// Root of an increasing function on [lo, hi]. Throws std::domain_error when
/// f(lo) and f(hi) do not bracket zero.
template <typename F>
double bisect_increasing(F&& f, double lo, double hi, BisectionOptions opts = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo > 0 || fhi < 0) throw std::domain_error("bisection bracket does not contain a root");
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    for (int i = 0; i < opts.max_iterations && hi - lo > opts.tolerance; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace chain_rivalry
