#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chain_rivalry/closed_form.hpp"
#include "support.hpp"

using namespace chain_rivalry;
using namespace chain_rivalry::testing;

namespace {

constexpr double kSpotTol = 1e-6;

// Marginal two-period profit with respect to each firm's own period-1 price,
// written out from the stage demand without going through the library.
struct Foc {
    double a = 0;
    double b = 0;
};

Foc compatible_foc(const ModelParams& p, const EquilibriumOutcome& eq) {
    const double m = p.s - p.alpha;
    const double d = p.quality_of_b(Scenario::CompatibleDifferent);
    const double x = (p.alpha * (p.n1 - p.n2) + m - d - eq.pA1 + eq.pB1) / (2 * m);
    return {x - eq.pA1 / (2 * m), (1 - x) - eq.pB1 / (2 * m)};
}

Foc incompatible_foc(const ModelParams& p, const EquilibriumOutcome& eq) {
    const double m = p.s - p.alpha;
    const double d = p.quality_of_b(Scenario::Incompatible);
    const double x = (p.alpha * (p.n1 - p.n3) + m - d - eq.pA1 + eq.pB1) / (2 * m);
    const double y = 1 - x;
    const double ra = p.k + p.alpha * p.n1;
    const double rb = p.k + p.alpha * p.n3 + d;
    return {x - eq.pA1 / (2 * m) - (ra - 2 * m * x) / (2 * m),
            y - eq.pB1 / (2 * m) - (rb - 2 * m * y) / (2 * m)};
}

}  // namespace

TEST_CASE("same chain splits the market at price s") {
    const auto eq = same_chain_equilibrium(reference_params());
    CHECK(eq.pA1 == 3.0);
    CHECK(eq.pB2 == 3.0);
    CHECK(eq.cutoff1 == 0.5);
    CHECK(eq.profitA == doctest::Approx(3.0));
    CHECK(eq.profitB == doctest::Approx(3.0));
}

TEST_CASE("compatible chains: reference values") {
    const auto eq = compatible_equilibrium(reference_params());
    CHECK(std::abs(eq.pA1 - frozen::kCompatiblePA) < kSpotTol);
    CHECK(std::abs(eq.pB1 - frozen::kCompatiblePB) < kSpotTol);
    CHECK(eq.pA2 == eq.pA1);
    CHECK(std::abs(eq.cutoff1 - frozen::kCompatibleCutoff) < kSpotTol);
    CHECK(std::abs(eq.profitA - frozen::kCompatibleProfitA) < kSpotTol);
    CHECK(std::abs(eq.profitB - frozen::kCompatibleProfitB) < kSpotTol);
    CHECK(eq.nA1 + eq.nB1 == doctest::Approx(1.0));
}

TEST_CASE("compatible chains with equal bases price at s - alpha") {
    auto p = reference_params();
    p.n2 = p.n1;
    p.k = 40;
    const auto eq = compatible_equilibrium(p);
    CHECK(eq.pA1 == doctest::Approx(p.s - p.alpha));
    CHECK(eq.pB1 == doctest::Approx(p.s - p.alpha));
    CHECK(eq.cutoff1 == doctest::Approx(0.5));
}

TEST_CASE("B's compatible payoff at the quality threshold equals its same-chain payoff") {
    auto p = reference_params();
    p.d = frozen::kD2Star;
    CHECK(std::abs(compatible_equilibrium(p).profitB - 3.0) < 1e-5);
    p.d = frozen::kD3Star;
    CHECK(std::abs(incompatible_equilibrium(p).profitB - 3.0) < 1e-5);
}

TEST_CASE("incompatible chains: reference values") {
    const auto eq = incompatible_equilibrium(reference_params());
    CHECK(std::abs(eq.pA1 - frozen::kIncompatiblePA1) < kSpotTol);
    CHECK(std::abs(eq.pB1 - frozen::kIncompatiblePB1) < kSpotTol);
    CHECK(std::abs(eq.pA2 - frozen::kIncompatiblePA2) < kSpotTol);
    CHECK(std::abs(eq.pB2 - frozen::kIncompatiblePB2) < kSpotTol);
    CHECK(std::abs(eq.cutoff1 - frozen::kIncompatibleCutoff) < kSpotTol);
    CHECK(std::abs(eq.profitA - frozen::kIncompatibleProfitA) < kSpotTol);
    CHECK(std::abs(eq.profitB - frozen::kIncompatibleProfitB) < kSpotTol);
    CHECK(eq.pA1 < 0);
    CHECK(eq.pB1 < 0);
    CHECK(eq.nA2 == eq.nA1);
    CHECK(eq.nB2 == eq.nB1);
}

TEST_CASE("incompatible totals do not depend on k") {
    ParamStream gen(11);
    for (int i = 0; i < 100; ++i) {
        const auto p = gen.next();
        const auto base = incompatible_equilibrium(p);
        const auto up = incompatible_equilibrium(p.with("k", p.k + 1.0));
        CHECK(std::abs(up.profitA - base.profitA) < 1e-9 * (1 + std::abs(base.profitA)));
        CHECK(std::abs(up.profitB - base.profitB) < 1e-9 * (1 + std::abs(base.profitB)));
        CHECK(up.pA1 - base.pA1 == doctest::Approx(-1.0));
        CHECK(up.pB1 - base.pB1 == doctest::Approx(-1.0));
    }
}

TEST_CASE("threshold values on the reference configuration") {
    const auto p = reference_params();
    const auto t = threshold_report(p);
    CHECK(t.c2_star == doctest::Approx(frozen::kC2Star).epsilon(1e-12));
    CHECK(t.c3_star == doctest::Approx(frozen::kC3Star).epsilon(1e-12));
    CHECK(std::abs(t.d2_star - frozen::kD2Star) < 1e-8);
    CHECK(std::abs(t.d3_star - frozen::kD3Star) < 1e-8);
}

TEST_CASE("quality thresholds solve the payoff equalities") {
    ParamStream gen(5);
    for (int i = 0; i < 100; ++i) {
        const auto p = gen.next();
        const double m = p.s - p.alpha;
        const double gap2 = p.alpha * (p.n1 - p.n2);
        const double gap3 = p.alpha * (p.n1 - p.n3);
        const auto q = quality_threshold(p);

        // Square-root forms of pi_B(d) = s.
        const double d2 = 3 * std::sqrt(m * p.s) - 3 * m + gap2;
        const double d3 = 5 * std::sqrt(m * p.s / 3) - 2.5 * m + gap3;
        CHECK(std::abs(q.d2_star - d2) < 1e-8 * (1 + d2));
        CHECK(std::abs(q.d3_star - d3) < 1e-8 * (1 + d3));

        // Independent bisection on payoffs written out here.
        const double d2b = test_bisect(
            [&](double d) { return std::pow(3 * m + d - gap2, 2) / (9 * m) - p.s; }, 0, 100 * p.s);
        CHECK(std::abs(q.d2_star - d2b) < 1e-8 * (1 + d2b));

        const auto c = subsidy_threshold(p);
        CHECK(c.c3_star > c.c2_star);
        CHECK(c.c2_star > 0);
    }
}

TEST_CASE("thresholds are evaluated in the baseline game") {
    auto p = reference_params();
    p.d = 2.0;
    p.subsidy_p2 = 5.0;
    const auto t = threshold_report(p);
    CHECK(t.c2_star == doctest::Approx(frozen::kC2Star));
    CHECK(t.d3_star == doctest::Approx(frozen::kD3Star));
}

TEST_CASE("equal bases give a positive compatible threshold") {
    auto p = reference_params();
    p.n2 = p.n3 = p.n1;
    p.k = 40;
    const auto t = threshold_report(p);
    const double m = p.s - p.alpha;
    CHECK(t.c2_star == doctest::Approx(p.s - m));
    CHECK(t.d2_star == doctest::Approx(3 * std::sqrt(m * p.s) - 3 * m));
}

TEST_CASE("adoption decision flips at the thresholds") {
    const auto base = reference_params();
    CHECK(adoption_decision(base).chosen == Platform::P1);
    const double h = 1e-3;

    auto with = [&](const char* field, double v) { return base.with(field, v); };
    CHECK(adoption_decision(with("subsidy_p2", frozen::kC2Star - h)).chosen == Platform::P1);
    CHECK(adoption_decision(with("subsidy_p2", frozen::kC2Star + h)).chosen == Platform::P2);
    CHECK(adoption_decision(with("subsidy_p3", frozen::kC3Star - h)).chosen == Platform::P1);
    CHECK(adoption_decision(with("subsidy_p3", frozen::kC3Star + h)).chosen == Platform::P3);

    CHECK(adoption_decision(with("d", frozen::kD2Star - h)).chosen == Platform::P1);
    CHECK(adoption_decision(with("d", frozen::kD2Star + h)).chosen == Platform::P2);

    ModelParams p3 = base;
    p3.d_scope = QualityScope::P3Only;
    p3.d = frozen::kD3Star - h;
    CHECK(adoption_decision(p3).chosen == Platform::P1);
    p3.d = frozen::kD3Star + h;
    CHECK(adoption_decision(p3).chosen == Platform::P3);
}

TEST_CASE("decide takes the argmax with ties to the lower platform") {
    CHECK(decide({1, 2, 3}).chosen == Platform::P3);
    CHECK(decide({3, 3, 3}).chosen == Platform::P1);
    CHECK(decide({1, 3, 3}).chosen == Platform::P2);
    const auto r = decide({2, 1, 3}).ranking;
    CHECK(r[0] == Platform::P3);
    CHECK(r[1] == Platform::P1);
    CHECK(r[2] == Platform::P2);

    ParamStream gen(3);
    for (int i = 0; i < 200; ++i) {
        std::array<double, 3> v{gen.uniform(-5, 5), gen.uniform(-5, 5), gen.uniform(-5, 5)};
        const double shift = gen.uniform(-100, 100);
        std::array<double, 3> w{v[0] + shift, v[1] + shift, v[2] + shift};
        CHECK(decide(v).chosen == decide(w).chosen);
    }
}

TEST_CASE("adoption sensitivity") {
    const auto p = reference_params();
    const auto s = adoption_sensitivity(p);
    CHECK(s.compatible == doctest::Approx(1.0 / 17.4));
    CHECK(s.incompatible == doctest::Approx(1.0 / 14.5));
    CHECK(std::abs(s.compatible - 0.057471) < 1e-6);
    CHECK(std::abs(s.incompatible - 0.068966) < 1e-6);
    CHECK(s.incompatible / s.compatible == doctest::Approx(1.2).epsilon(1e-15));

    for (double d : {0.0, 0.3, 1.0}) {
        const double h = 1e-2;
        CHECK(-central_diff([&](double x) { return compatible_cutoff(p, x); }, d, h) ==
              doctest::Approx(s.compatible).epsilon(1e-10));
        CHECK(-central_diff([&](double x) { return incompatible_cutoff(p, x); }, d, h) ==
              doctest::Approx(s.incompatible).epsilon(1e-10));
    }
    CHECK_THROWS_AS(adoption_sensitivity(p.with("s", 1.0)), InvalidParams);
}

TEST_CASE("payoff ordering across chains on random draws") {
    ParamStream gen(42);
    for (int i = 0; i < 200; ++i) {
        const auto p = gen.next();
        const auto same = same_chain_equilibrium(p);
        const auto comp = compatible_equilibrium(p);
        const auto inc = incompatible_equilibrium(p);
        CAPTURE(i);
        CHECK(same.profitB > comp.profitB);
        CHECK(comp.profitB > inc.profitB);
        CHECK(comp.profitA > inc.profitA);
        CHECK(adoption_decision(p).chosen == Platform::P1);

        // A leads on a compatible chain and B undercuts s.
        CHECK(comp.profitA > comp.profitB);
        CHECK(comp.pB1 < p.s);

        // A's compatible price stays below s exactly when the base gap is below 3.
        const double gap = p.n1 - p.n2;
        CHECK((comp.pA1 < p.s) == (gap < 3));
        // A's compatible payoff stays below its same-chain payoff exactly when
        // (3m + alpha*gap)^2 < 9ms.
        const double m = p.s - p.alpha;
        const double lhs = std::pow(3 * m + p.alpha * gap, 2);
        if (std::abs(lhs - 9 * m * p.s) > 1e-9 * lhs)
            CHECK((comp.profitA < same.profitA) == (lhs < 9 * m * p.s));

        for (const auto& eq : {same, comp, inc}) {
            CHECK(eq.cutoff1 > 0);
            CHECK(eq.cutoff1 < 1);
        }
        const Foc fc = compatible_foc(p, comp);
        CHECK(std::abs(fc.a) < 1e-9);
        CHECK(std::abs(fc.b) < 1e-9);
        const Foc fi = incompatible_foc(p, inc);
        CHECK(std::abs(fi.a) < 1e-9);
        CHECK(std::abs(fi.b) < 1e-9);
    }
}

TEST_CASE("the payoff gap on compatible chains widens with alpha") {
    auto p = reference_params();
    p.k = 25;
    double prev = -1;
    for (int i = 0; i <= 8; ++i) {
        p.alpha = 0.05 + 0.01 * i;
        const auto eq = compatible_equilibrium(p);
        const double gap = eq.profitA - eq.profitB;
        CHECK(gap > prev);
        prev = gap;
    }
}

TEST_CASE("corner outcomes are reported") {
    auto p = reference_params();
    p.d = 9.5;
    CHECK_THROWS_AS(compatible_equilibrium(p), CornerEquilibrium);
    p.d = 8.0;
    CHECK_THROWS_AS(incompatible_equilibrium(p), CornerEquilibrium);
    p.d = 7.0;
    CHECK_NOTHROW(incompatible_equilibrium(p));
    CHECK_THROWS_AS(equilibrium(reference_params().with("s", 2.1), Scenario::SameChain), InvalidParams);
}

TEST_CASE("subsidies do not move prices") {
    auto p = reference_params();
    p.subsidy_p2 = 1.5;
    p.subsidy_p3 = 0.5;
    const auto comp = compatible_equilibrium(p);
    CHECK(comp.pA1 == doctest::Approx(frozen::kCompatiblePA));
    CHECK(comp.profitB_with_subsidy == doctest::Approx(comp.profitB + 1.5));
    CHECK(incompatible_equilibrium(p).profitB_with_subsidy ==
          doctest::Approx(frozen::kIncompatibleProfitB + 0.5));
    CHECK(same_chain_equilibrium(p).profitB_with_subsidy == doctest::Approx(3.0));
}

TEST_CASE("bisection rejects a bracket without a root") {
    CHECK_THROWS_AS(bisect_increasing([](double x) { return x + 1; }, 0.0, 1.0), std::domain_error);
    CHECK(bisect_increasing([](double x) { return x * x - 2; }, 0.0, 2.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}
