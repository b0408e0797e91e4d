#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chain_rivalry {

/// Firm B's period-0 platform choice.
enum class Scenario {
    SameChain,            ///< B builds on P1 next to the incumbent.
    CompatibleDifferent,  ///< B builds on P2; switching is free.
    Incompatible,         ///< B builds on P3; period-2 switching is impossible.
};

inline constexpr Scenario kAllScenarios[] = {
    Scenario::SameChain, Scenario::CompatibleDifferent, Scenario::Incompatible};

enum class Platform { P1, P2, P3 };
enum class Firm { A, B };
enum class Choice { FirmA, FirmB, Neither };

/// Which of B's alternative chains carries the extra user utility `d`.
enum class QualityScope { BothAlternatives, P2Only, P3Only };

constexpr Platform platform_of(Scenario sc) {
    switch (sc) {
        case Scenario::SameChain: return Platform::P1;
        case Scenario::CompatibleDifferent: return Platform::P2;
        case Scenario::Incompatible: return Platform::P3;
    }
    return Platform::P1;
}

constexpr Scenario scenario_of(Platform pl) {
    switch (pl) {
        case Platform::P1: return Scenario::SameChain;
        case Platform::P2: return Scenario::CompatibleDifferent;
        case Platform::P3: return Scenario::Incompatible;
    }
    return Scenario::SameChain;
}

/// Lock-in holds only when the two firms sit on incompatible chains.
constexpr bool has_lock_in(Scenario sc) { return sc == Scenario::Incompatible; }

std::string_view to_string(Scenario sc);
std::string_view to_string(Platform pl);
std::string_view to_string(Choice c);
std::string_view to_string(QualityScope q);

/// Parses "same" / "compatible" / "incompatible" (also the enum spellings).
Scenario parse_scenario(std::string_view text);
QualityScope parse_quality_scope(std::string_view text);

/// Exogenous model parameters. `d` and the subsidies default to zero, which is
/// the baseline game.
struct ModelParams {
    double alpha = 0.0;  ///< network-effect utility per existing user
    double s = 0.0;      ///< preference dispersion (transport cost)
    double k = 0.0;      ///< stand-alone value
    double n1 = 0.0;     ///< existing users on P1
    double n2 = 0.0;     ///< existing users on P2
    double n3 = 0.0;     ///< existing users on P3
    double d = 0.0;      ///< extra per-user utility on B's alternative chain
    double subsidy_p2 = 0.0;
    double subsidy_p3 = 0.0;
    QualityScope d_scope = QualityScope::BothAlternatives;

    /// Existing user base of the chain B builds on.
    double base_of_b(Scenario sc) const;
    /// Extra user utility of B's chain in this scenario (0 on P1).
    double quality_of_b(Scenario sc) const;
    /// One-time transfer B receives for this choice (0 on P1).
    double subsidy_for(Scenario sc) const;

    ModelParams with(std::string_view field, double value) const;
    double get(std::string_view field) const;

    bool operator==(const ModelParams&) const = default;
};

/// Field names accepted by `ModelParams::get/with`, sweeps and the config file.
inline constexpr std::string_view kParamNames[] = {
    "alpha", "s", "k", "n1", "n2", "n3", "d", "subsidy_p2", "subsidy_p3"};

struct Violation {
    std::string constraint;  // e.g. "assumption_1_1"
    std::string relation;    // e.g. "s > alpha*(2*n1+1)"
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ValidityReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    /// Semicolon-joined constraint names, empty when ok.
    std::string names() const;
    std::string describe() const;
};

ValidityReport validate_params(const ModelParams& p);

class InvalidParams : public std::runtime_error {
public:
    explicit InvalidParams(ValidityReport report);
    const ValidityReport& report() const { return report_; }

private:
    ValidityReport report_;
};

/// The requested equilibrium leaves the interior (cutoff outside (0,1) or the
/// marginal user drops out).
class CornerEquilibrium : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws InvalidParams unless `validate_params(p).ok()`.
void require_valid(const ModelParams& p);

struct UserChoice {
    double x = 0.0;
    int period = 1;
    Choice choice = Choice::Neither;
    bool locked = false;
};

/// One-period payoff of a user of type `x` for `choice` given prices and the
/// current adoption shares of both firms.
///
/// On a shared chain both firms draw on the pooled network N1 + nA + nB;
/// otherwise each firm only carries its own chain's users. Throws
/// std::invalid_argument when x, nA or nB leave [0,1] or period is not 1/2.
double user_utility(const ModelParams& p, Scenario sc, double x, int period,
                    Choice choice, double pA, double pB, double nA, double nB);

}  // namespace chain_rivalry
