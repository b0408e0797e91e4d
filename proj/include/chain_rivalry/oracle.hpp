#pragma once

#include <optional>

#include "chain_rivalry/model.hpp"

namespace chain_rivalry {

/// Uniform price grid used for best-response scans.
struct PriceGrid {
    double lo = -1.0;
    double hi = 1.0;
    int steps = 4001;

    /// [-(k + alpha*n1 + s + d), k + alpha*n1 + s + d] with 4001 points.
    static PriceGrid default_for(const ModelParams& p);

    double step() const { return (hi - lo) / (steps - 1); }
    double at(int i) const { return i == steps - 1 ? hi : lo + i * step(); }
    /// Throws std::invalid_argument unless lo < hi and steps >= 2.
    void check() const;
};

/// Stage demand for one pair of prices, consistent with the users' adoption
/// fixed point. `neither` is the mass of non-participants.
struct StageDemand {
    double nA = 0;
    double nB = 0;
    double neither = 0;
    double cutoff = 0;
    bool full_participation = false;
};

StageDemand stage_demand(const ModelParams& p, Scenario sc, double pA, double pB);

struct OracleOptions {
    std::optional<double> start_a;  // both default to s
    std::optional<double> start_b;
    int max_sweeps = 500;
    double tolerance = 1e-11;  // price movement (relative to 1 + |p|) that counts as a move
};

struct OracleResult {
    double pA1 = 0, pB1 = 0, pA2 = 0, pB2 = 0;
    double cutoff1 = 0, cutoff2 = 0;
    double nA1 = 0, nB1 = 0, nA2 = 0, nB2 = 0;
    double profitA = 0, profitB = 0;
    bool converged = false;
    int iterations = 0;
    double residual = 0;  // max |price change| in the last sweep

    // Bookkeeping over every stage_demand call made during the solve.
    long demand_evaluations = 0;
    long conservation_failures = 0;  // nA + nB + neither != 1
    bool best_response_monotone = true;
};

/// Iterated best response for the one-shot Bertrand game (SameChain or
/// CompatibleDifferent). Each response is a grid argmax refined with the
/// vertex of the parabola through the best point and its neighbours. Both
/// periods repeat the one-shot outcome. Throws std::invalid_argument for the
/// Incompatible scenario.
OracleResult one_stage_nash(const ModelParams& p, Scenario sc, const PriceGrid& grid,
                            const OracleOptions& opts = {});

struct MonopolyPrice {
    double price = 0;
    double retained = 0;
};

/// Period-2 pricing against a locked-in base of `n_first` users by a grid scan
/// of revenue price * min((rent - price)/(s - alpha), n_first), refined by a
/// golden-section search around the best grid point.
MonopolyPrice period2_monopoly_price(const ModelParams& p, Firm firm, double n_first);

/// Backward induction for the lock-in game: period-2 prices come from
/// period2_monopoly_price on each firm's period-1 base; period-1 prices are
/// found by iterated best response on two-period profit.
OracleResult two_stage_nash(const ModelParams& p, const PriceGrid& grid,
                            const OracleOptions& opts = {});

/// Dispatches to one_stage_nash or two_stage_nash.
OracleResult oracle_equilibrium(const ModelParams& p, Scenario sc, const PriceGrid& grid,
                                const OracleOptions& opts = {});

}  // namespace chain_rivalry
