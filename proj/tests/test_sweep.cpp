#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chain_rivalry/sweep.hpp"
#include "support.hpp"

using namespace chain_rivalry;
using namespace chain_rivalry::testing;

namespace {

constexpr std::size_t kCompatible = 1;

// First grid value at which the chosen platform is `to`.
std::optional<double> first_choice(const std::vector<SweepRecord>& recs, Platform to) {
    for (const auto& r : recs)
        if (r.chosen == to) return r.value;
    return std::nullopt;
}

}  // namespace

TEST_CASE("alpha sweep: the compatible payoff gap widens") {
    const auto recs = run_sweep(reference_params(), {"alpha", 0.05, 0.13, 9});
    REQUIRE(recs.size() == 9);
    // With k = 20 the stand-alone bound caps alpha below 0.125.
    for (const auto& row : recs.back().rows) CHECK(row.note == "assumption_1_2");
    double prev = -1;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const auto& r = recs[i];
        const auto& row = r.rows[kCompatible];
        REQUIRE(row.valid);
        CHECK(row.profitA - row.profitB > prev);
        CHECK(row.pB1 < 3.0);
        prev = row.profitA - row.profitB;
        CHECK(r.chosen == Platform::P1);
        REQUIRE(r.thresholds.has_value());
        CHECK(r.thresholds->c3_star > r.thresholds->c2_star);
    }
    CHECK(recs.front().value == 0.05);
    CHECK(recs.back().value == 0.13);
}

TEST_CASE("quality sweep flips the choice at the thresholds") {
    const double step = 2.0 / 200;
    const auto recs = run_sweep(reference_params(), {"d", 0.0, 2.0, 201});
    const auto to_p2 = first_choice(recs, Platform::P2);
    REQUIRE(to_p2.has_value());
    CHECK(*to_p2 >= frozen::kD2Star);
    CHECK(*to_p2 < frozen::kD2Star + step);

    auto p3 = reference_params();
    p3.d_scope = QualityScope::P3Only;
    const auto recs3 = run_sweep(p3, {"d", 0.0, 2.0, 201});
    CHECK_FALSE(first_choice(recs3, Platform::P2).has_value());
    const auto to_p3 = first_choice(recs3, Platform::P3);
    REQUIRE(to_p3.has_value());
    CHECK(*to_p3 >= frozen::kD3Star);
    CHECK(*to_p3 < frozen::kD3Star + step);
}

TEST_CASE("points outside the valid region are flagged") {
    const auto recs = run_sweep(reference_params(), {"s", 1.5, 3.0, 4});
    REQUIRE(recs.size() == 4);
    // s = 1.5 and 2.0 sit below alpha(2 n1 + 1) = 2.1.
    for (int i : {0, 1}) {
        for (const auto& row : recs[static_cast<std::size_t>(i)].rows) {
            CHECK_FALSE(row.valid);
            CHECK(row.note.find("assumption_1_1") != std::string::npos);
        }
        CHECK_FALSE(recs[static_cast<std::size_t>(i)].chosen.has_value());
    }
    for (const auto& row : recs[3].rows) CHECK(row.valid);

    const std::string csv = sweep_to_csv(recs);
    CHECK(csv.find("1.5,same,,,,,,,,,,,,,false:assumption_1_1") != std::string::npos);
}

TEST_CASE("corner outcomes are flagged per scenario") {
    const auto recs = run_sweep(reference_params(), {"d", 7.0, 10.0, 4});
    // d = 8: incompatible cutoff leaves (0,1); d = 10: compatible too.
    CHECK(recs[1].rows[2].note == "corner_equilibrium");
    CHECK(recs[1].rows[1].valid);
    CHECK_FALSE(recs[1].chosen.has_value());
    CHECK(recs[3].rows[1].note == "corner_equilibrium");
    CHECK(recs[3].rows[0].valid);
}

TEST_CASE("CSV layout and round trip") {
    auto base = reference_params();
    base.subsidy_p2 = 0.2;
    const auto recs = run_sweep(base, {"s", 1.5, 4.0, 6});
    const std::string csv = sweep_to_csv(recs);
    CHECK(csv.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 6);

    const auto back = sweep_from_csv(csv);
    REQUIRE(back.size() == recs.size());
    CHECK(sweep_to_csv(back) == csv);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].chosen == recs[i].chosen);
        CHECK(back[i].thresholds.has_value() == recs[i].thresholds.has_value());
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(back[i].rows[j].valid == recs[i].rows[j].valid);
            CHECK(back[i].rows[j].note == recs[i].rows[j].note);
            if (recs[i].rows[j].valid)
                CHECK(back[i].rows[j].profitB == doctest::Approx(recs[i].rows[j].profitB).epsilon(1e-8));
        }
    }

    CHECK_THROWS_AS(sweep_from_csv("nope\n"), std::invalid_argument);
    const std::string truncated = csv.substr(0, csv.find('\n', csv.find('\n') + 1) + 1);
    CHECK_THROWS_AS(sweep_from_csv(truncated), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic") {
    const SweepSpec spec{"k", 18.0, 30.0, 13};
    CHECK(sweep_to_csv(run_sweep(reference_params(), spec)) ==
          sweep_to_csv(run_sweep(reference_params(), spec)));
}

TEST_CASE("SVG chart") {
    const auto recs = run_sweep(reference_params(), {"s", 1.5, 4.0, 6});
    const std::string svg = sweep_to_svg(recs, "s");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("P2 (compatible)") != std::string::npos);
    std::size_t polylines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1))
        ++polylines;
    CHECK(polylines == 3);
}

TEST_CASE("sweep spec validation") {
    CHECK_THROWS_AS((SweepSpec{"beta", 0, 1, 3}.check()), std::invalid_argument);
    CHECK_THROWS_AS((SweepSpec{"alpha", 1, 1, 3}.check()), std::invalid_argument);
    CHECK_THROWS_AS((SweepSpec{"alpha", 0, 1, 1}.check()), std::invalid_argument);
    CHECK((SweepSpec{"alpha", 0, 1, 5}.value_at(4)) == 1.0);
}
