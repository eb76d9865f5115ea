#pragma once

#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

struct SanovReport {
    int levels = 0;  // levels run 1..levels
    // Per level: tuple-count mass |preimage of the level| / |X|^N, and the
    // product-measure mass of the same level computed over label tuples.
    // Asserted equal entry by entry; both sum to one.
    std::vector<Rational> micro_mass;
    std::vector<Rational> label_mass;
};

SanovReport exact_sanov_identity(const System& base, int N, const LogValue& eps, int k);

struct RateEstimate {
    std::vector<int> horizons;
    std::vector<double> limit;               // per level: -(l-1)*eps
    std::vector<std::vector<double>> rate;   // [level][horizon]; NaN for mass 0
    std::vector<std::vector<double>> gap;    // rate - limit
    std::vector<bool> gap_shrinking;         // |gap| weakly decreasing where defined
};

// Finite-size log-mass rates (1/N) ln mass_l from exact masses, annotated
// with the asymptotic limit. Trends are reported, never asserted.
RateEstimate rate_estimate(const System& base, const std::vector<int>& horizons,
                           const LogValue& eps, int k);

struct DominanceTrend {
    std::vector<int> horizons;
    std::vector<Rational> equilibrium_ratio;    // |X_N^eq| / |X|^N
    std::vector<Rational> decreasing_fraction;  // |D n X_N^eq| / |X_N^eq|
};

DominanceTrend dominance_trend(const System& base, const std::vector<int>& horizons,
                               const LogValue& eps, int k);

}  // namespace micromacro
