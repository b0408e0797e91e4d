#pragma once

// Test-only helpers: the reference parameter set, values frozen from an
// independent high-precision FOC solve, and small oracles that do not go
// through the library's closed forms.

#include <cmath>
#include <functional>
#include <random>

#include "chain_rivalry/model.hpp"
#include "chain_rivalry/verify.hpp"

namespace chain_rivalry::testing {

inline ModelParams reference_params() {
    ModelParams p;
    p.alpha = 0.1;
    p.s = 3.0;
    p.k = 20.0;
    p.n1 = 10.0;
    p.n2 = 5.0;
    p.n3 = 5.0;
    return p;
}

// Frozen from a 30-digit numerical solve of each firm's first-order
// conditions, built directly from the demand functions.
namespace frozen {
inline constexpr double kCompatiblePA = 3.0666666666666667;
inline constexpr double kCompatiblePB = 2.7333333333333333;
inline constexpr double kCompatibleCutoff = 0.52873563218390805;
inline constexpr double kCompatibleProfitA = 3.2429118773946360;
inline constexpr double kCompatibleProfitB = 2.5762452107279693;

inline constexpr double kIncompatiblePA1 = -14.8;
inline constexpr double kIncompatiblePB1 = -15.1;
inline constexpr double kIncompatiblePA2 = 19.45;
inline constexpr double kIncompatiblePB2 = 19.15;
inline constexpr double kIncompatibleCutoff = 0.53448275862068966;
inline constexpr double kIncompatibleProfitA = 2.4853448275862069;
inline constexpr double kIncompatibleProfitB = 1.8853448275862069;

inline constexpr double kC2Star = 0.42375478927203065;
inline constexpr double kC3Star = 1.1146551724137931;
inline constexpr double kD2Star = 0.64872872225157550;
inline constexpr double kD3Star = 1.7646931829632006;
}  // namespace frozen

/// Plain bisection for an increasing function, kept separate from the
/// library's routine.
inline double test_bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Central finite difference.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Seeded stream of valid baseline parameter sets for property tests.
class ParamStream {
public:
    explicit ParamStream(std::uint64_t seed) : rng_(seed) {}
    ModelParams next() { return random_valid_params(rng_); }
    double uniform(double lo, double hi) { return uniform_open(rng_, lo, hi); }

private:
    std::mt19937_64 rng_;
};

}  // namespace chain_rivalry::testing
