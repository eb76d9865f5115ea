#include "micromacro/ldev.hpp"

#include <cmath>
#include <limits>

#include "micromacro/budget.hpp"
#include "micromacro/build.hpp"
#include "micromacro/errors.hpp"

namespace micromacro {

namespace {

// Per-level product-measure mass, by walking the label tuples of length N.
std::vector<Rational> label_level_masses(const System& base, int N, const LogValue& eps,
                                         int k) {
    BigInt tuples = 1;
    for (int t = 0; t < N; ++t) tuples *= base.k;
    charge_budget(tuples, "label tuple enumeration");
    MacroDistribution p = macro_measure(base);

    std::vector<Rational> mass(k, 0);
    std::vector<int> digits(N, 0);
    BigInt total = tuples;
    for (BigInt id = 0; id < total; ++id) {
        std::vector<long> counts(base.k, 0);
        Rational m = 1;
        for (int t = 0; t < N; ++t) {
            ++counts[digits[t]];
            m *= p[digits[t]];
        }
        int level = kl_level(counts, N, p, eps, k);
        mass[level - 1] += m;
        for (int t = 0; t < N && ++digits[t] == base.k; ++t) digits[t] = 0;
    }
    return mass;
}

}  // namespace

SanovReport exact_sanov_identity(const System& base, int N, const LogValue& eps, int k) {
    System emp = empirical_system(base, N, eps, k);

    SanovReport rep;
    rep.levels = k;
    rep.micro_mass.assign(k, 0);
    BigInt total = 1;
    for (int t = 0; t < N; ++t) total *= base.n;
    for (int a = 0; a < emp.k; ++a) {
        int level = static_cast<int>((*emp.macro_values)[a].get_num().get_si());
        Rational m(BigInt(emp.block_size[a]), total);
        m.canonicalize();
        rep.micro_mass[level - 1] += m;
    }

    rep.label_mass = label_level_masses(base, N, eps, k);

    Rational sum1 = 0, sum2 = 0;
    for (int l = 0; l < k; ++l) {
        if (rep.micro_mass[l] != rep.label_mass[l])
            throw IdentityError("level mass mismatch between state and label enumeration");
        sum1 += rep.micro_mass[l];
        sum2 += rep.label_mass[l];
    }
    if (sum1 != 1 || sum2 != 1)
        throw IdentityError("level masses do not sum to one");
    return rep;
}

RateEstimate rate_estimate(const System& base, const std::vector<int>& horizons,
                           const LogValue& eps, int k) {
    RateEstimate rep;
    rep.horizons = horizons;
    rep.limit.resize(k);
    for (int l = 1; l <= k; ++l) rep.limit[l - 1] = -(frac(l - 1) * eps).to_double();
    rep.rate.assign(k, {});
    rep.gap.assign(k, {});
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (int N : horizons) {
        if (N < 1) throw ValidationError("horizons must be positive");
        auto mass = label_level_masses(base, N, eps, k);
        for (int l = 0; l < k; ++l) {
            double r = mass[l] == 0
                           ? nan
                           : LogValue::log_rational(mass[l]).to_double() / N;
            rep.rate[l].push_back(r);
            rep.gap[l].push_back(r - rep.limit[l]);
        }
    }
    rep.gap_shrinking.assign(k, true);
    for (int l = 0; l < k; ++l) {
        double prev = nan;
        for (double g : rep.gap[l]) {
            if (std::isnan(g)) continue;
            if (!std::isnan(prev) && std::fabs(g) > std::fabs(prev))
                rep.gap_shrinking[l] = false;
            prev = g;
        }
    }
    return rep;
}

DominanceTrend dominance_trend(const System& base, const std::vector<int>& horizons,
                               const LogValue& eps, int k) {
    DominanceTrend rep;
    rep.horizons = horizons;
    for (int N : horizons) {
        if (N < 1) throw ValidationError("horizons must be positive");
        System emp = empirical_system(base, N, eps, k);
        EquilibriumReport eq = equilibrium_report(emp);
        rep.equilibrium_ratio.push_back(eq.ratio);
        std::vector<bool> in_eq(emp.n, false);
        for (int i : eq.equilibrium) in_eq[i] = true;
        long dec = 0;
        for (int i : entropy_classes(emp).decreasing)
            if (in_eq[i]) ++dec;
        rep.decreasing_fraction.push_back(
            frac(dec, static_cast<long>(eq.equilibrium.size())));
    }
    return rep;
}

}  // namespace micromacro
