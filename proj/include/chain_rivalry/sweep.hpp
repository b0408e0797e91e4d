#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chain_rivalry/closed_form.hpp"
#include "chain_rivalry/model.hpp"

namespace chain_rivalry {

struct SweepSpec {
    std::string param;  // one of kParamNames
    double lo = 0;
    double hi = 1;
    int steps = 2;

    /// Throws std::invalid_argument on an unknown name, lo >= hi or steps < 2.
    void check() const;
    double value_at(int i) const;
};

/// One scenario's numbers at a sweep point. Numeric fields are meaningless
/// when `valid` is false; `note` then names the failure.
struct ScenarioRow {
    bool valid = false;
    std::string note;
    double pA1 = 0, pB1 = 0, pA2 = 0, pB2 = 0;
    double cutoff = 0;
    double profitA = 0, profitB = 0;
    double profitB_with_subsidy = 0;  // not serialized
};

struct SweepRecord {
    double value = 0;
    std::array<ScenarioRow, 3> rows;  // indexed like kAllScenarios
    std::optional<Platform> chosen;
    std::optional<ThresholdReport> thresholds;
};

std::vector<SweepRecord> run_sweep(const ModelParams& base, const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader =
    "param_value,scenario,pA1,pB1,pA2,pB2,cutoff,profitA,profitB,chosen,c2_star,c3_star,"
    "d2_star,d3_star,valid";

/// Three lines per record (one per scenario) under kSweepCsvHeader. Numbers
/// use 9 significant digits; fields of invalid rows are empty and `valid`
/// reads "false:<reason>".
std::string sweep_to_csv(const std::vector<SweepRecord>& records);

/// Inverse of sweep_to_csv at the printed precision. Throws
/// std::invalid_argument on malformed input.
std::vector<SweepRecord> sweep_from_csv(const std::string& text);

/// Line chart of B's payoff (subsidy included) per scenario against the
/// swept parameter.
std::string sweep_to_svg(const std::vector<SweepRecord>& records, const std::string& param);

}  // namespace chain_rivalry
