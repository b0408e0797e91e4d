#include "chain_rivalry/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace chain_rivalry {

PriceGrid PriceGrid::default_for(const ModelParams& p) {
    const double reach = p.k + p.alpha * p.n1 + p.s + p.d;
    return {-reach, reach, 4001};
}

void PriceGrid::check() const {
    if (!(lo < hi)) throw std::invalid_argument("price grid needs lo < hi");
    if (steps < 2) throw std::invalid_argument("price grid needs at least 2 steps");
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Standalone reach of each firm on a shared chain when the two served
// segments do not touch: both networks count the other firm's users.
std::pair<double, double> shared_chain_reach(const ModelParams& p, double pA, double pB) {
    const double m = p.s - p.alpha;
    const double rent = p.k + p.alpha * p.n1;
    double a = 0.0;
    double b = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a_next = clamp01((rent - pA + p.alpha * b) / m);
        const double b_next = clamp01((rent - pB + p.alpha * a_next) / m);
        const bool settled = a_next == a && b_next == b;
        a = a_next;
        b = b_next;
        if (settled) break;
    }
    return {a, b};
}

}  // namespace

StageDemand stage_demand(const ModelParams& p, Scenario sc, double pA, double pB) {
    const double m = p.s - p.alpha;
    const bool shared = sc == Scenario::SameChain;
    const double base_b = p.base_of_b(sc);
    const double quality = p.quality_of_b(sc);

    const double raw_cutoff =
        shared ? 0.5 + (pB - pA) / (2.0 * p.s)
               : (p.alpha * (p.n1 - base_b) + m - pA + pB - quality) / (2.0 * m);
    const double cutoff = clamp01(raw_cutoff);

    StageDemand out;
    out.cutoff = cutoff;

    // Full coverage holds when the user furthest from the winning side of the
    // cutoff still buys.
    const double na = cutoff;
    const double nb = 1.0 - cutoff;
    double u_edge = 0.0;
    if (cutoff >= 1.0)
        u_edge = user_utility(p, sc, 1.0, 1, Choice::FirmA, pA, pB, 1.0, 0.0);
    else if (cutoff <= 0.0)
        u_edge = user_utility(p, sc, 0.0, 1, Choice::FirmB, pA, pB, 0.0, 1.0);
    else
        u_edge = user_utility(p, sc, cutoff, 1, Choice::FirmA, pA, pB, na, nb);

    if (u_edge >= 0.0) {
        out.nA = na;
        out.nB = nb;
        out.neither = 0.0;
        out.full_participation = true;
        return out;
    }

    // Partial participation: each firm serves users up to the type whose
    // utility hits zero.
    double a = 0.0;
    double b = 0.0;
    if (shared) {
        if (raw_cutoff >= 1.0) {
            a = clamp01((p.k + p.alpha * p.n1 - pA) / m);
        } else if (raw_cutoff <= 0.0) {
            b = clamp01((p.k + p.alpha * p.n1 - pB) / m);
        } else {
            std::tie(a, b) = shared_chain_reach(p, pA, pB);
            a = std::min(a, cutoff);
            b = std::min(b, 1.0 - cutoff);
        }
    } else {
        a = clamp01((p.k + p.alpha * p.n1 - pA) / m);
        b = clamp01((p.k + p.alpha * base_b + quality - pB) / m);
        if (raw_cutoff >= 1.0)
            b = std::min(b, 1.0 - a);
        else if (raw_cutoff <= 0.0)
            a = std::min(a, 1.0 - b);
        else {
            a = std::min(a, cutoff);
            b = std::min(b, 1.0 - cutoff);
        }
    }
    out.nA = a;
    out.nB = b;
    out.neither = 1.0 - (a + b);
    out.full_participation = false;
    return out;
}

namespace {

constexpr double kGolden = 0.6180339887498949;

// Maximizer of a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol) {
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < 200 && hi - lo > rel_tol * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

struct Response {
    double price;
    double value;
};

int nearest_index(const PriceGrid& grid, double price) {
    const double idx = std::round((price - grid.lo) / grid.step());
    return static_cast<int>(std::clamp(idx, 0.0, static_cast<double>(grid.steps - 1)));
}

// Grid argmax of `objective` over [first, last], refined around the winner.
// Returns nullopt when the winner sits on a window edge that is not a grid
// edge, so the caller can widen the scan.
std::optional<Response> scan_and_refine(const std::function<double(double)>& objective,
                                        const PriceGrid& grid, int first, int last) {
    int best = first;
    double best_value = objective(grid.at(first));
    for (int i = first + 1; i <= last; ++i) {
        const double v = objective(grid.at(i));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    if ((best == first && first > 0) || (best == last && last < grid.steps - 1))
        return std::nullopt;
    if (best == 0 || best == grid.steps - 1) return Response{grid.at(best), best_value};

    const double h = grid.step();
    const double x1 = grid.at(best);
    const double f0 = objective(grid.at(best - 1));
    const double f2 = objective(grid.at(best + 1));
    const double curvature = f0 - 2.0 * best_value + f2;
    if (curvature < 0.0) {
        const double vertex = x1 + h * (f0 - f2) / (2.0 * curvature);
        if (std::abs(vertex - x1) <= h) {
            const double fv = objective(vertex);
            // Rounding noise when the optimum sits on a grid point.
            if (fv >= best_value - 1e-12 * (1.0 + std::abs(best_value))) return Response{vertex, fv};
        }
    }
    // Off the quadratic piece (a kink in the bracket): fall back to a
    // bracketed search, keeping the grid point if that does no better.
    const double g = golden_section_max(objective, grid.at(best - 1), grid.at(best + 1), 1e-15);
    const double fg = objective(g);
    if (fg >= best_value) return Response{g, fg};
    return Response{x1, best_value};
}

constexpr int kWindow = 64;

Response best_response(const std::function<double(double)>& objective, const PriceGrid& grid,
                       std::optional<double> around) {
    if (around) {
        const int c = nearest_index(grid, *around);
        const int first = std::max(0, c - kWindow);
        const int last = std::min(grid.steps - 1, c + kWindow);
        if (auto r = scan_and_refine(objective, grid, first, last)) return *r;
    }
    return *scan_and_refine(objective, grid, 0, grid.steps - 1);
}

// Tracks conservation over every demand evaluation of a solve.
struct DemandProbe {
    const ModelParams& params;
    Scenario scenario;
    OracleResult& tally;

    StageDemand operator()(double pA, double pB) const {
        StageDemand dem = stage_demand(params, scenario, pA, pB);
        ++tally.demand_evaluations;
        if (dem.nA + dem.nB + dem.neither != 1.0) ++tally.conservation_failures;
        return dem;
    }
};

struct BestResponseLoop {
    std::function<double(double, double)> profit_a;  // (own, rival)
    std::function<double(double, double)> profit_b;  // (own, rival)
};

void iterate_best_responses(const BestResponseLoop& loop, const PriceGrid& grid, double start_a,
                            double start_b, const OracleOptions& opts, OracleResult& out,
                            double& pa, double& pb) {
    pa = start_a;
    pb = start_b;
    bool first = true;
    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        out.iterations = sweep;

        const double old_a = pa;
        const double before_a = loop.profit_a(pa, pb);
        auto ra = best_response([&](double q) { return loop.profit_a(q, pb); }, grid,
                                first ? std::nullopt : std::optional<double>(pa));
        if (ra.value < before_a - 1e-9 * (1.0 + std::abs(before_a))) out.best_response_monotone = false;
        pa = ra.price;

        const double old_b = pb;
        const double before_b = loop.profit_b(pb, pa);
        auto rb = best_response([&](double q) { return loop.profit_b(q, pa); }, grid,
                                first ? std::nullopt : std::optional<double>(pb));
        if (rb.value < before_b - 1e-9 * (1.0 + std::abs(before_b))) out.best_response_monotone = false;
        pb = rb.price;
        first = false;

        out.residual = std::max(std::abs(pa - old_a), std::abs(pb - old_b));
        const double scale = 1.0 + std::max(std::abs(pa), std::abs(pb));
        if (out.residual <= opts.tolerance * scale) {
            out.converged = true;
            return;
        }
    }
}

}  // namespace

OracleResult one_stage_nash(const ModelParams& p, Scenario sc, const PriceGrid& grid,
                            const OracleOptions& opts) {
    if (sc == Scenario::Incompatible)
        throw std::invalid_argument("one_stage_nash covers the zero-switching-cost scenarios only");
    grid.check();

    OracleResult out;
    DemandProbe demand{p, sc, out};
    BestResponseLoop loop{
        [&](double own, double rival) { return own * demand(own, rival).nA; },
        [&](double own, double rival) { return own * demand(rival, own).nB; },
    };

    double pa = 0.0;
    double pb = 0.0;
    iterate_best_responses(loop, grid, opts.start_a.value_or(p.s), opts.start_b.value_or(p.s), opts,
                           out, pa, pb);

    const StageDemand dem = demand(pa, pb);
    out.pA1 = out.pA2 = pa;
    out.pB1 = out.pB2 = pb;
    out.cutoff1 = out.cutoff2 = dem.cutoff;
    out.nA1 = out.nA2 = dem.nA;
    out.nB1 = out.nB2 = dem.nB;
    out.profitA = 2.0 * pa * dem.nA;
    out.profitB = 2.0 * pb * dem.nB;
    return out;
}

MonopolyPrice period2_monopoly_price(const ModelParams& p, Firm firm, double n_first) {
    const Scenario sc = Scenario::Incompatible;
    const double m = p.s - p.alpha;
    const double rent = firm == Firm::A ? p.k + p.alpha * p.n1
                                        : p.k + p.alpha * p.base_of_b(sc) + p.quality_of_b(sc);
    if (n_first <= 0.0 || rent <= 0.0) return {std::max(rent, 0.0), 0.0};

    auto retained = [&](double price) { return std::clamp((rent - price) / m, 0.0, n_first); };
    auto revenue = [&](double price) { return price * retained(price); };

    // Revenue is unimodal on [0, rent]: rising along the full-retention
    // segment, then concave once users start leaving.
    constexpr int kScan = 65;
    const double h = rent / (kScan - 1);
    int best = 0;
    double best_value = revenue(0.0);
    for (int i = 1; i < kScan; ++i) {
        const double v = revenue(i * h);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    const double lo = std::max(0, best - 1) * h;
    const double hi = std::min(kScan - 1, best + 1) * h;
    const double price = golden_section_max(revenue, lo, hi, 1e-15);
    return {price, retained(price)};
}

OracleResult two_stage_nash(const ModelParams& p, const PriceGrid& grid, const OracleOptions& opts) {
    grid.check();
    OracleResult out;
    DemandProbe demand{p, Scenario::Incompatible, out};

    auto second_period = [&](Firm firm, double base) {
        if (base <= 0.0) return 0.0;
        const MonopolyPrice mp = period2_monopoly_price(p, firm, base);
        return mp.price * mp.retained;
    };
    BestResponseLoop loop{
        [&](double own, double rival) {
            const StageDemand dem = demand(own, rival);
            return own * dem.nA + second_period(Firm::A, dem.nA);
        },
        [&](double own, double rival) {
            const StageDemand dem = demand(rival, own);
            return own * dem.nB + second_period(Firm::B, dem.nB);
        },
    };

    double pa = 0.0;
    double pb = 0.0;
    iterate_best_responses(loop, grid, opts.start_a.value_or(p.s), opts.start_b.value_or(p.s), opts,
                           out, pa, pb);

    const StageDemand dem = demand(pa, pb);
    const MonopolyPrice a2 = period2_monopoly_price(p, Firm::A, dem.nA);
    const MonopolyPrice b2 = period2_monopoly_price(p, Firm::B, dem.nB);
    out.pA1 = pa;
    out.pB1 = pb;
    out.pA2 = a2.price;
    out.pB2 = b2.price;
    out.cutoff1 = dem.cutoff;
    out.nA1 = dem.nA;
    out.nB1 = dem.nB;
    out.nA2 = a2.retained;
    out.nB2 = b2.retained;
    // Locked-in A users form the down-set [0, nA2].
    out.cutoff2 = a2.retained;
    out.profitA = pa * dem.nA + a2.price * a2.retained;
    out.profitB = pb * dem.nB + b2.price * b2.retained;
    return out;
}

OracleResult oracle_equilibrium(const ModelParams& p, Scenario sc, const PriceGrid& grid,
                                const OracleOptions& opts) {
    if (sc == Scenario::Incompatible) return two_stage_nash(p, grid, opts);
    return one_stage_nash(p, sc, grid, opts);
}

}  // namespace chain_rivalry
