#include "chain_rivalry/adoption_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace chain_rivalry {

UserPopulation::UserPopulation(int m) {
    if (m < 2) throw std::invalid_argument("population needs at least 2 users");
    types_.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) types_[static_cast<std::size_t>(i)] = (i + 0.5) / m;
}

namespace {

Choice pick(const ModelParams& p, Scenario sc, double x, int period, double pA, double pB,
            double nA, double nB, std::optional<Choice> locked_to) {
    const double ua = user_utility(p, sc, x, period, Choice::FirmA, pA, pB, nA, nB);
    const double ub = user_utility(p, sc, x, period, Choice::FirmB, pA, pB, nA, nB);
    if (locked_to == Choice::FirmA) return ua >= 0.0 ? Choice::FirmA : Choice::Neither;
    if (locked_to == Choice::FirmB) return ub >= 0.0 ? Choice::FirmB : Choice::Neither;
    if (ub >= ua) return ub >= 0.0 ? Choice::FirmB : Choice::Neither;
    return ua >= 0.0 ? Choice::FirmA : Choice::Neither;
}

}  // namespace

SimOutcome simulate_period(const UserPopulation& pop, const ModelParams& p, Scenario sc,
                           int period, double pA, double pB,
                           std::optional<std::span<const Choice>> locks,
                           const SimSettings& settings) {
    if (period != 1 && period != 2) throw std::invalid_argument("period must be 1 or 2");
    const bool want_locks = period == 2 && has_lock_in(sc);
    if (locks.has_value() != want_locks)
        throw std::invalid_argument(
            "period-1 locks are required exactly for period 2 of the incompatible scenario");
    if (locks && static_cast<int>(locks->size()) != pop.size())
        throw std::invalid_argument("lock vector does not match the population size");

    const auto types = pop.types();
    const double m = static_cast<double>(pop.size());

    SimOutcome out;
    out.period = period;
    out.choices.assign(types.size(), Choice::Neither);

    double nA = 0.5;
    double nB = 0.5;
    for (int it = 1; it <= settings.max_iterations; ++it) {
        out.iterations = it;
        long count_a = 0;
        long count_b = 0;
        for (std::size_t i = 0; i < types.size(); ++i) {
            std::optional<Choice> locked_to;
            if (locks && (*locks)[i] != Choice::Neither) locked_to = (*locks)[i];
            const Choice c = pick(p, sc, types[i], period, pA, pB, nA, nB, locked_to);
            out.choices[i] = c;
            count_a += c == Choice::FirmA;
            count_b += c == Choice::FirmB;
        }
        const double next_a = count_a / m;
        const double next_b = count_b / m;
        const double change = std::max(std::abs(next_a - nA), std::abs(next_b - nB));
        nA = next_a;
        nB = next_b;
        if (change < settings.tolerance) {
            out.converged = true;
            break;
        }
    }

    out.nA = nA;
    out.nB = nB;
    out.neither = 1.0 - (nA + nB);
    out.cutoff = 0.0;
    for (std::size_t i = types.size(); i-- > 0;) {
        if (out.choices[i] == Choice::FirmA) {
            out.cutoff = (static_cast<double>(i) + 1.0) / m;
            break;
        }
    }
    out.revenueA = pA * nA;
    out.revenueB = pB * nB;
    return out;
}

GameSimulation simulate_game(const ModelParams& p, Scenario sc, const PriceQuad& prices, int m,
                             const SimSettings& settings) {
    const UserPopulation pop(m);
    GameSimulation game;
    game.period1 = simulate_period(pop, p, sc, 1, prices.pA1, prices.pB1, std::nullopt, settings);

    std::optional<std::span<const Choice>> locks;
    if (has_lock_in(sc)) locks = std::span<const Choice>(game.period1.choices);
    game.period2 = simulate_period(pop, p, sc, 2, prices.pA2, prices.pB2, locks, settings);

    for (std::size_t i = 0; i < game.period1.choices.size(); ++i) {
        const Choice before = game.period1.choices[i];
        const Choice after = game.period2.choices[i];
        if (before != Choice::Neither && after != Choice::Neither && before != after)
            ++game.switchers;
    }
    return game;
}

}  // namespace chain_rivalry
