#include "chain_rivalry/closed_form.hpp"

#include <algorithm>
#include <sstream>

namespace chain_rivalry {

namespace {

std::string corner_message(Scenario sc, const char* what, double value) {
    std::ostringstream os;
    os.precision(9);
    os << to_string(sc) << " equilibrium is not interior: " << what << " = " << value;
    return os.str();
}

void require_interior_cutoff(Scenario sc, double cutoff) {
    if (!(cutoff > 0.0 && cutoff < 1.0)) throw CornerEquilibrium(corner_message(sc, "cutoff", cutoff));
}

// The indifferent user must weakly prefer buying to staying out.
void require_participation(const ModelParams& p, Scenario sc, double cutoff, double pA,
                           double pB) {
    const double u = user_utility(p, sc, cutoff, 1, Choice::FirmA, pA, pB, cutoff, 1.0 - cutoff);
    if (u < 0.0) throw CornerEquilibrium(corner_message(sc, "marginal user utility", u));
}

void fill_totals(EquilibriumOutcome& out, const ModelParams& p) {
    out.profitA = out.profitA1 + out.profitA2;
    out.profitB = out.profitB1 + out.profitB2;
    out.profitB_with_subsidy = out.profitB + p.subsidy_for(out.scenario);
}

}  // namespace

double compatible_cutoff(const ModelParams& p, double d) {
    const double m = p.s - p.alpha;
    return (-d + 3.0 * m + p.alpha * (p.n1 - p.n2)) / (6.0 * m);
}

double incompatible_cutoff(const ModelParams& p, double d) {
    const double m = p.s - p.alpha;
    return (5.0 * m + 2.0 * p.alpha * (p.n1 - p.n3) - 2.0 * d) / (10.0 * m);
}

double compatible_profit_b(const ModelParams& p, double d) {
    const double m = p.s - p.alpha;
    const double lead = 3.0 * m + d + p.alpha * (p.n2 - p.n1);
    return lead * lead / (9.0 * m);
}

double incompatible_profit_b(const ModelParams& p, double d) {
    const double m = p.s - p.alpha;
    const double lead = 2.0 * d + 5.0 * m + 2.0 * p.alpha * (p.n3 - p.n1);
    return 3.0 * lead * lead / (100.0 * m);
}

EquilibriumOutcome same_chain_equilibrium(const ModelParams& p) {
    require_valid(p);
    EquilibriumOutcome out;
    out.scenario = Scenario::SameChain;
    out.pA1 = out.pB1 = out.pA2 = out.pB2 = p.s;
    out.cutoff1 = out.cutoff2 = 0.5;
    out.nA1 = out.nB1 = out.nA2 = out.nB2 = 0.5;
    require_participation(p, out.scenario, out.cutoff1, out.pA1, out.pB1);
    out.profitA1 = out.profitA2 = out.profitB1 = out.profitB2 = 0.5 * p.s;
    fill_totals(out, p);
    return out;
}

EquilibriumOutcome compatible_equilibrium(const ModelParams& p) {
    require_valid(p);
    const Scenario sc = Scenario::CompatibleDifferent;
    const double m = p.s - p.alpha;
    const double d = p.quality_of_b(sc);
    const double lead = p.alpha * (p.n1 - p.n2);

    EquilibriumOutcome out;
    out.scenario = sc;
    out.pA1 = out.pA2 = m + (lead - d) / 3.0;
    out.pB1 = out.pB2 = m + (d - lead) / 3.0;
    out.cutoff1 = out.cutoff2 = compatible_cutoff(p, d);
    require_interior_cutoff(sc, out.cutoff1);
    require_participation(p, sc, out.cutoff1, out.pA1, out.pB1);

    out.nA1 = out.nA2 = out.cutoff1;
    out.nB1 = out.nB2 = 1.0 - out.cutoff1;

    const double a_term = 3.0 * m - d + lead;
    out.profitA1 = out.profitA2 = a_term * a_term / (18.0 * m);
    out.profitB1 = out.profitB2 = 0.5 * compatible_profit_b(p, d);
    fill_totals(out, p);
    return out;
}

EquilibriumOutcome incompatible_equilibrium(const ModelParams& p) {
    require_valid(p);
    const Scenario sc = Scenario::Incompatible;
    const double m = p.s - p.alpha;
    const double d = p.quality_of_b(sc);
    const double nb = p.n3;

    EquilibriumOutcome out;
    out.scenario = sc;
    out.pA1 = (-4.0 * d + 10.0 * m - 5.0 * p.k - p.alpha * (p.n1 + 4.0 * nb)) / 5.0;
    out.pB1 = (-d + 10.0 * m - 5.0 * p.k - p.alpha * (4.0 * p.n1 + nb)) / 5.0;
    out.cutoff1 = out.cutoff2 = incompatible_cutoff(p, d);
    require_interior_cutoff(sc, out.cutoff1);
    require_participation(p, sc, out.cutoff1, out.pA1, out.pB1);

    out.nA1 = out.nA2 = out.cutoff1;
    out.nB1 = out.nB2 = 1.0 - out.cutoff1;

    // Period 2: highest price at which every locked-in adopter still stays.
    const double rent_a = p.k + p.alpha * p.n1;
    const double rent_b = p.k + p.alpha * nb + d;
    out.pA2 = rent_a - m * out.nA1;
    out.pB2 = rent_b - m * out.nB1;
    // Full retention beats the unconstrained monopoly price only while the
    // monopoly demand at rent/2 covers the whole retained base.
    if (rent_a < 2.0 * m * out.nA1 || rent_b < 2.0 * m * out.nB1)
        throw CornerEquilibrium(corner_message(sc, "period-2 retention (rent)", std::min(rent_a, rent_b)));

    out.profitA1 = out.pA1 * out.nA1;
    out.profitB1 = out.pB1 * out.nB1;
    out.profitA2 = out.pA2 * out.nA2;
    out.profitB2 = out.pB2 * out.nB2;
    fill_totals(out, p);
    return out;
}

EquilibriumOutcome equilibrium(const ModelParams& p, Scenario sc) {
    switch (sc) {
        case Scenario::SameChain: return same_chain_equilibrium(p);
        case Scenario::CompatibleDifferent: return compatible_equilibrium(p);
        case Scenario::Incompatible: return incompatible_equilibrium(p);
    }
    throw std::invalid_argument("unknown scenario");
}

namespace {

ModelParams baseline(const ModelParams& p) {
    ModelParams b = p;
    b.d = 0.0;
    b.subsidy_p2 = 0.0;
    b.subsidy_p3 = 0.0;
    return b;
}

}  // namespace

SubsidyThresholds subsidy_threshold(const ModelParams& p) {
    const ModelParams b = baseline(p);
    const double same = same_chain_equilibrium(b).profitB;
    return {same - compatible_equilibrium(b).profitB, same - incompatible_equilibrium(b).profitB};
}

QualityThresholds quality_threshold(const ModelParams& p) {
    require_valid(p);
    const double same = same_chain_equilibrium(baseline(p)).profitB;
    const double hi = 10.0 * (p.s + p.alpha * p.n1);
    const BisectionOptions opts{1e-9, 200};
    QualityThresholds out;
    out.d2_star = bisect_increasing([&](double d) { return compatible_profit_b(p, d) - same; },
                                    0.0, hi, opts);
    out.d3_star = bisect_increasing([&](double d) { return incompatible_profit_b(p, d) - same; },
                                    0.0, hi, opts);
    return out;
}

ThresholdReport threshold_report(const ModelParams& p) {
    const auto c = subsidy_threshold(p);
    const auto d = quality_threshold(p);
    return {c.c2_star, c.c3_star, d.d2_star, d.d3_star};
}

AdoptionDecision decide(const std::array<double, 3>& payoffs) {
    AdoptionDecision out;
    out.payoffs = payoffs;
    out.ranking = {Platform::P1, Platform::P2, Platform::P3};
    std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](Platform a, Platform b) {
        return payoffs[static_cast<std::size_t>(a)] > payoffs[static_cast<std::size_t>(b)];
    });
    out.chosen = out.ranking.front();
    return out;
}

AdoptionDecision adoption_decision(const ModelParams& p) {
    std::array<double, 3> payoffs{};
    for (Scenario sc : kAllScenarios)
        payoffs[static_cast<std::size_t>(platform_of(sc))] = equilibrium(p, sc).profitB_with_subsidy;
    return decide(payoffs);
}

AdoptionSlopes adoption_sensitivity(const ModelParams& p) {
    require_valid(p);
    const double m = p.s - p.alpha;
    return {1.0 / (6.0 * m), 1.0 / (5.0 * m)};
}

}  // namespace chain_rivalry
