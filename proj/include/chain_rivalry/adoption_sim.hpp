#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chain_rivalry/model.hpp"

namespace chain_rivalry {

/// m users at the cell midpoints x_i = (i + 1/2)/m of [0,1].
class UserPopulation {
public:
    explicit UserPopulation(int m);

    int size() const { return static_cast<int>(types_.size()); }
    std::span<const double> types() const { return types_; }

private:
    std::vector<double> types_;
};

struct PriceQuad {
    double pA1 = 0, pB1 = 0, pA2 = 0, pB2 = 0;
};

struct SimOutcome {
    int period = 1;
    double nA = 0, nB = 0, neither = 0;  // fractions of the population
    /// Upper edge of the cell of the highest type choosing A (0 if none).
    /// Under full participation this equals nA.
    double cutoff = 0;
    double revenueA = 0, revenueB = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<Choice> choices;
};

struct SimSettings {
    int max_iterations = 1000;
    double tolerance = 1e-12;
};

/// Adoption fixed point for one period. Starting from shares (1/2, 1/2), every
/// user picks the best of A, B and Neither under the current shares, then the
/// shares are recomputed, until they stop moving. A user indifferent between
/// the firms takes B; indifference between a firm and Neither means buying.
/// With `locks` (period 2 of the Incompatible scenario only) a user who bought
/// from F in period 1 may only choose F or Neither.
SimOutcome simulate_period(const UserPopulation& pop, const ModelParams& p, Scenario sc,
                           int period, double pA, double pB,
                           std::optional<std::span<const Choice>> locks = std::nullopt,
                           const SimSettings& settings = {});

struct GameSimulation {
    SimOutcome period1;
    SimOutcome period2;
    int switchers = 0;  // users whose firm changed between periods

    double revenueA() const { return period1.revenueA + period2.revenueA; }
    double revenueB() const { return period1.revenueB + period2.revenueB; }
    bool converged() const { return period1.converged && period2.converged; }
};

/// Runs both periods at the given prices, carrying period-1 choices into
/// period 2 as locks when the scenario has lock-in.
GameSimulation simulate_game(const ModelParams& p, Scenario sc, const PriceQuad& prices, int m,
                             const SimSettings& settings = {});

}  // namespace chain_rivalry
