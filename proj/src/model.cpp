#include "chain_rivalry/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chain_rivalry {

std::string_view to_string(Scenario sc) {
    switch (sc) {
        case Scenario::SameChain: return "same";
        case Scenario::CompatibleDifferent: return "compatible";
        case Scenario::Incompatible: return "incompatible";
    }
    return "?";
}

std::string_view to_string(Platform pl) {
    switch (pl) {
        case Platform::P1: return "P1";
        case Platform::P2: return "P2";
        case Platform::P3: return "P3";
    }
    return "?";
}

std::string_view to_string(Choice c) {
    switch (c) {
        case Choice::FirmA: return "A";
        case Choice::FirmB: return "B";
        case Choice::Neither: return "neither";
    }
    return "?";
}

std::string_view to_string(QualityScope q) {
    switch (q) {
        case QualityScope::BothAlternatives: return "both";
        case QualityScope::P2Only: return "p2";
        case QualityScope::P3Only: return "p3";
    }
    return "?";
}

Scenario parse_scenario(std::string_view text) {
    if (text == "same" || text == "SameChain" || text == "p1") return Scenario::SameChain;
    if (text == "compatible" || text == "CompatibleDifferent" || text == "p2")
        return Scenario::CompatibleDifferent;
    if (text == "incompatible" || text == "Incompatible" || text == "p3")
        return Scenario::Incompatible;
    throw std::invalid_argument("unknown scenario '" + std::string(text) + "'");
}

QualityScope parse_quality_scope(std::string_view text) {
    if (text == "both") return QualityScope::BothAlternatives;
    if (text == "p2") return QualityScope::P2Only;
    if (text == "p3") return QualityScope::P3Only;
    throw std::invalid_argument("unknown d_applies_to value '" + std::string(text) + "'");
}

double ModelParams::base_of_b(Scenario sc) const {
    switch (sc) {
        case Scenario::SameChain: return n1;
        case Scenario::CompatibleDifferent: return n2;
        case Scenario::Incompatible: return n3;
    }
    return n1;
}

double ModelParams::quality_of_b(Scenario sc) const {
    switch (sc) {
        case Scenario::SameChain: return 0.0;
        case Scenario::CompatibleDifferent:
            return d_scope == QualityScope::P3Only ? 0.0 : d;
        case Scenario::Incompatible:
            return d_scope == QualityScope::P2Only ? 0.0 : d;
    }
    return 0.0;
}

double ModelParams::subsidy_for(Scenario sc) const {
    switch (sc) {
        case Scenario::SameChain: return 0.0;
        case Scenario::CompatibleDifferent: return subsidy_p2;
        case Scenario::Incompatible: return subsidy_p3;
    }
    return 0.0;
}

namespace {

double* field_ptr(ModelParams& p, std::string_view field) {
    if (field == "alpha") return &p.alpha;
    if (field == "s") return &p.s;
    if (field == "k") return &p.k;
    if (field == "n1") return &p.n1;
    if (field == "n2") return &p.n2;
    if (field == "n3") return &p.n3;
    if (field == "d") return &p.d;
    if (field == "subsidy_p2") return &p.subsidy_p2;
    if (field == "subsidy_p3") return &p.subsidy_p3;
    throw std::invalid_argument("unknown parameter '" + std::string(field) + "'");
}

}  // namespace

ModelParams ModelParams::with(std::string_view field, double value) const {
    ModelParams copy = *this;
    *field_ptr(copy, field) = value;
    return copy;
}

double ModelParams::get(std::string_view field) const {
    ModelParams copy = *this;
    return *field_ptr(copy, field);
}

std::string ValidityReport::names() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += ';';
        out += v.constraint;
    }
    return out;
}

std::string ValidityReport::describe() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os.precision(9);
    bool first = true;
    for (const auto& v : violations) {
        if (!first) os << "; ";
        first = false;
        os << v.constraint << " violated: " << v.relation << " (lhs=" << v.lhs
           << ", rhs=" << v.rhs << ")";
    }
    return os.str();
}

ValidityReport validate_params(const ModelParams& p) {
    ValidityReport r;
    auto need = [&](bool holds, std::string name, std::string relation, double lhs,
                    double rhs) {
        if (!holds) r.violations.push_back({std::move(name), std::move(relation), lhs, rhs});
    };

    for (auto name : kParamNames) {
        double v = p.get(name);
        need(std::isfinite(v), std::string(name) + "_finite", std::string(name) + " is finite",
             v, 0.0);
    }
    if (!r.ok()) return r;

    need(p.alpha > 0, "alpha_positive", "alpha > 0", p.alpha, 0.0);
    need(p.s > 0, "s_positive", "s > 0", p.s, 0.0);
    need(p.k > 0, "k_positive", "k > 0", p.k, 0.0);
    need(p.n1 >= 0, "n1_nonnegative", "n1 >= 0", p.n1, 0.0);
    need(p.n2 >= 0, "n2_nonnegative", "n2 >= 0", p.n2, 0.0);
    need(p.n3 >= 0, "n3_nonnegative", "n3 >= 0", p.n3, 0.0);
    need(p.d >= 0, "d_nonnegative", "d >= 0", p.d, 0.0);
    need(p.subsidy_p2 >= 0, "subsidy_p2_nonnegative", "subsidy_p2 >= 0", p.subsidy_p2, 0.0);
    need(p.subsidy_p3 >= 0, "subsidy_p3_nonnegative", "subsidy_p3 >= 0", p.subsidy_p3, 0.0);
    // Equal bases are admitted so symmetric limits stay computable.
    need(p.n1 >= p.n2, "chain_order_p2", "n1 >= n2", p.n1, p.n2);
    need(p.n1 >= p.n3, "chain_order_p3", "n1 >= n3", p.n1, p.n3);

    const double a1_rhs = p.alpha * (2.0 * p.n1 + 1.0);
    need(p.s > a1_rhs, "assumption_1_1", "s > alpha*(2*n1+1)", p.s, a1_rhs);

    const double n_alt = std::max(p.n2, p.n3);
    const double a2_rhs = 4.0 * p.s + 4.0 * p.alpha * (1.0 + p.n1 + n_alt);
    need(p.k > a2_rhs, "assumption_1_2", "k > 4*s + 4*alpha*(1+n1+max(n2,n3))", p.k, a2_rhs);
    return r;
}

InvalidParams::InvalidParams(ValidityReport report)
    : std::runtime_error("invalid parameters: " + report.describe()),
      report_(std::move(report)) {}

void require_valid(const ModelParams& p) {
    auto report = validate_params(p);
    if (!report.ok()) throw InvalidParams(std::move(report));
}

double user_utility(const ModelParams& p, Scenario sc, double x, int period, Choice choice,
                    double pA, double pB, double nA, double nB) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("user type x must lie in [0,1]");
    if (!(nA >= 0.0 && nA <= 1.0 && nB >= 0.0 && nB <= 1.0))
        throw std::invalid_argument("adoption shares must lie in [0,1]");
    if (period != 1 && period != 2) throw std::invalid_argument("period must be 1 or 2");

    switch (choice) {
        case Choice::Neither: return 0.0;
        case Choice::FirmA: {
            const double network = sc == Scenario::SameChain ? p.n1 + nA + nB : p.n1 + nA;
            return p.alpha * network - pA - p.s * x + p.k;
        }
        case Choice::FirmB: {
            const double network =
                sc == Scenario::SameChain ? p.n1 + nA + nB : p.base_of_b(sc) + nB;
            return p.alpha * network - pB - p.s * (1.0 - x) + p.k + p.quality_of_b(sc);
        }
    }
    return 0.0;
}

}  // namespace chain_rivalry
