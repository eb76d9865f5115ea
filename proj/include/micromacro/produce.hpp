#pragma once

#include <map>
#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

// n-step entropy production at a microstate, stored as the exact size ratio
// rho = |m(alpha^n i)| / |m(i)|; the rate itself is ln(rho) / n.
struct SigmaRatio {
    Rational rho;
    long n = 1;
    LogValue rate() const;
};

// Asserts the one-step chain rule: rho is the product of the single-step
// ratios along the orbit.
SigmaRatio sigma(const System& s, int i, long n);

// Mean production rate under cq. Asserted equal to (1/n)(S([alpha^n]q)-S(q))
// and to the average of the per-time increments.
LogValue mean_production(const System& s, const MacroDistribution& q, long n);

// Increment at time n: S([alpha^n]q) - S([alpha^(n-1)]q), asserted equal to
// the cq-mean of the single-step rate at time n-1.
LogValue delta(const System& s, const MacroDistribution& q, long n);

// rho -> total coarse-grained weight of microstates with that ratio.
using ProductionDensity = std::map<Rational, Rational>;
ProductionDensity production_density(const System& s, const MacroDistribution& q, long n);

struct FluctuationReport {
    ProductionDensity density;
    LogValue sigma_q;
    bool zero = false;  // sigma_q vanishes
};

// Requires an entropy-preserving reversion and q constant on the
// communication classes of the kernel of the auxiliary dynamics r alpha^n.
// Asserts: pointwise ratio reciprocity under r alpha^n, the density symmetry
// w(rho) = rho * w(1/rho), the positive-part decomposition of sigma_q with
// sigma_q >= 0, the vanishing criterion, and the uniform-q strictness.
FluctuationReport fluctuation_check(const System& s, const MacroDistribution& q, long n);

struct SubequilibriumReport {
    MacroDistribution q;  // proportional to block size below the threshold
    ProductionDensity density;
    LogValue sigma_q;
    bool invariant = false;  // threshold set closed under alpha^n
};

// Requires an entropy-preserving reversion and a non-equilibrium threshold
// label c. Asserts w(x) >= w(-x) for x > 0 and sigma_q = 0 iff invariance.
SubequilibriumReport subequilibrium_profile(const System& s, int c, long n);

struct PositivityReport {
    bool preserves_entropy = false;  // alpha^n preserves block sizes
    bool sigma_nonneg_all_q = false;
    std::vector<int> halfspace_sign;  // per label: sign of the Delta row form
    bool delta_nonneg_all_q = false;
};

// Asserts the equivalence "sigma_n^q >= 0 for all q iff alpha^n preserves
// entropy" (the all-q side reduced to point masses by convexity) and reports
// the per-label half-space signs governing Delta_n^q.
PositivityReport positivity_criteria(const System& s, long n);

}  // namespace micromacro
