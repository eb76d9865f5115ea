#include "micromacro/produce.hpp"

#include <algorithm>

#include "micromacro/errors.hpp"
#include "micromacro/markov.hpp"

namespace micromacro {

namespace {

Rational step_ratio(const System& s, int i, long n) {
    auto an = alpha_power(s, n);
    return frac(s.block_size[s.macro[an[i]]], s.block_size[s.macro[i]]);
}

// Coarse-grained weight per ratio value; skips zero-weight microstates.
ProductionDensity density_of(const System& s, const MacroDistribution& q, long n) {
    auto cq = coarse_grain(s, q);
    auto an = alpha_power(s, n);
    ProductionDensity w;
    for (int i = 0; i < s.n; ++i) {
        if (cq[i] == 0) continue;
        Rational rho = frac(s.block_size[s.macro[an[i]]], s.block_size[s.macro[i]]);
        w[rho] += cq[i];
    }
    return w;
}

LogValue mean_from_density(const ProductionDensity& w, long n) {
    LogValue out;
    for (const auto& [rho, weight] : w)
        out += weight * (frac(1, n) * LogValue::log_rational(rho));
    return out;
}

}  // namespace

LogValue SigmaRatio::rate() const {
    return frac(1, n) * LogValue::log_rational(rho);
}

SigmaRatio sigma(const System& s, int i, long n) {
    if (i < 0 || i >= s.n) throw ValidationError("microstate index out of range");
    if (n < 1) throw ValidationError("horizon must be positive");
    Rational rho = step_ratio(s, i, n);
    Rational chain = 1;
    int j = i;
    for (long t = 0; t < n; ++t) {
        chain *= step_ratio(s, j, 1);
        j = s.alpha[j];
    }
    if (chain != rho) throw IdentityError("production chain rule failed");
    return {rho, n};
}

LogValue mean_production(const System& s, const MacroDistribution& q, long n) {
    if (n < 1) throw ValidationError("horizon must be positive");
    check_distribution(s, q);
    LogValue mean = mean_from_density(density_of(s, q, n), n);

    LogValue by_entropy =
        frac(1, n) * (mean_boltzmann(s, apply_kernel(kernel_power(s, n), q)) -
                          mean_boltzmann(s, q));
    if (!(mean == by_entropy))
        throw IdentityError("mean production disagrees with the entropy difference form");

    LogValue by_increments;
    for (long t = 1; t <= n; ++t) by_increments += delta(s, q, t);
    by_increments *= frac(1, n);
    if (!(mean == by_increments))
        throw IdentityError("mean production disagrees with the increment average");
    return mean;
}

LogValue delta(const System& s, const MacroDistribution& q, long n) {
    if (n < 1) throw ValidationError("horizon must be positive");
    check_distribution(s, q);
    LogValue d = mean_boltzmann(s, apply_kernel(kernel_power(s, n), q)) -
                 mean_boltzmann(s, apply_kernel(kernel_power(s, n - 1), q));

    // Same thing as the cq-mean of the single-step ratio at time n-1.
    auto cq = coarse_grain(s, q);
    auto before = alpha_power(s, n - 1);
    LogValue pointwise;
    for (int i = 0; i < s.n; ++i) {
        if (cq[i] == 0) continue;
        pointwise += cq[i] * LogValue::log_rational(step_ratio(s, before[i], 1));
    }
    if (!(d == pointwise))
        throw IdentityError("entropy increment disagrees with the pointwise mean");
    return d;
}

ProductionDensity production_density(const System& s, const MacroDistribution& q, long n) {
    if (n < 1) throw ValidationError("horizon must be positive");
    check_distribution(s, q);
    ProductionDensity w = density_of(s, q, n);
    Rational total = 0;
    for (const auto& [rho, weight] : w) total += weight;
    if (total != 1) throw IdentityError("production density does not sum to one");
    return w;
}

FluctuationReport fluctuation_check(const System& s, const MacroDistribution& q, long n) {
    if (n < 1) throw ValidationError("horizon must be positive");
    check_distribution(s, q);
    if (!s.reversion)
        throw ValidationError("PreconditionFailed: no reversion present");
    ReversionReport rr = reversion_report(s);
    if (!rr.entropy_preserving)
        throw ValidationError("PreconditionFailed: reversion does not preserve entropy");

    // The auxiliary involution r alpha^n, whose kernel's communication
    // classes must not separate q.
    auto an = alpha_power(s, n);
    const auto& r = *s.reversion;
    std::vector<int> ran(s.n);
    for (int i = 0; i < s.n; ++i) ran[i] = r[an[i]];
    System aux = s;
    aux.alpha = ran;
    ChainStructure cs = chain_structure(aux);
    for (int a = 0; a < s.k; ++a)
        if (q[a] != q[cs.classes[cs.class_of_label[a]].front()])
            throw ValidationError(
                "PreconditionFailed: q not constant on the classes of the reversed dynamics");

    // Pointwise reciprocity of the production ratio along r alpha^n.
    for (int i = 0; i < s.n; ++i) {
        Rational rho = step_ratio(s, i, n);
        if (step_ratio(s, ran[i], n) * rho != 1)
            throw IdentityError("production ratio not inverted by the reversed dynamics");
    }

    FluctuationReport rep;
    rep.density = production_density(s, q, n);
    for (const auto& [rho, weight] : rep.density) {
        Rational inv = 1 / rho;
        auto it = rep.density.find(inv);
        Rational w_inv = it == rep.density.end() ? frac(0) : it->second;
        if (weight != rho * w_inv)
            throw IdentityError("density symmetry w(rho) = rho w(1/rho) failed");
    }

    rep.sigma_q = mean_production(s, q, n);
    LogValue positive_part;
    for (const auto& [rho, weight] : rep.density) {
        if (rho <= 1) continue;
        positive_part +=
            (1 - 1 / rho) * weight * (frac(1, n) * LogValue::log_rational(rho));
    }
    if (!(rep.sigma_q == positive_part))
        throw IdentityError("positive-part decomposition of the mean production failed");
    if (rep.sigma_q.sign() < 0)
        throw IdentityError("mean production negative under the fluctuation hypotheses");

    // sigma_q = 0 iff alpha^n preserves entropy wherever q charges.
    rep.zero = rep.sigma_q.sign() == 0;
    bool preserved_on_support = true;
    for (int i = 0; i < s.n; ++i)
        if (q[s.macro[i]] != 0 && s.block_size[s.macro[an[i]]] != s.block_size[s.macro[i]])
            preserved_on_support = false;
    if (rep.zero != preserved_on_support)
        throw IdentityError("vanishing criterion for the mean production failed");

    if (q == uniform_on_labels(s)) {
        bool somewhere_changed = false;
        for (int i = 0; i < s.n; ++i)
            if (s.block_size[s.macro[an[i]]] != s.block_size[s.macro[i]])
                somewhere_changed = true;
        if ((rep.sigma_q.sign() > 0) != somewhere_changed)
            throw IdentityError("uniform-q strict positivity criterion failed");
    }
    return rep;
}

SubequilibriumReport subequilibrium_profile(const System& s, int c, long n) {
    if (n < 1) throw ValidationError("horizon must be positive");
    if (c < 0 || c >= s.k) throw ValidationError("label out of range");
    if (!s.reversion)
        throw ValidationError("PreconditionFailed: no reversion present");
    if (!reversion_report(s).entropy_preserving)
        throw ValidationError("PreconditionFailed: reversion does not preserve entropy");
    long cap = s.block_size[c];
    long largest = *std::max_element(s.block_size.begin(), s.block_size.end());
    if (cap >= largest)
        throw ValidationError("NotNonEquilibrium: threshold label has maximal entropy");

    SubequilibriumReport rep;
    long mass = 0;
    for (int a = 0; a < s.k; ++a)
        if (s.block_size[a] <= cap) mass += s.block_size[a];
    rep.q.assign(s.k, 0);
    for (int a = 0; a < s.k; ++a)
        if (s.block_size[a] <= cap) rep.q[a] = frac(s.block_size[a], mass);

    rep.density = production_density(s, rep.q, n);
    for (const auto& [rho, weight] : rep.density) {
        if (rho <= 1) continue;
        auto it = rep.density.find(1 / rho);
        if (it != rep.density.end() && weight < it->second)
            throw IdentityError("subequilibrium density favors the negative side");
    }

    rep.sigma_q = mean_production(s, rep.q, n);
    if (rep.sigma_q.sign() < 0)
        throw IdentityError("subequilibrium mean production negative");
    auto an = alpha_power(s, n);
    rep.invariant = true;
    for (int i = 0; i < s.n; ++i)
        if (s.block_size[s.macro[i]] <= cap && s.block_size[s.macro[an[i]]] > cap)
            rep.invariant = false;
    if ((rep.sigma_q.sign() == 0) != rep.invariant)
        throw IdentityError("subequilibrium vanishing criterion failed");
    return rep;
}

PositivityReport positivity_criteria(const System& s, long n) {
    if (n < 1) throw ValidationError("horizon must be positive");
    PositivityReport rep;
    auto an = alpha_power(s, n);
    rep.preserves_entropy = true;
    for (int i = 0; i < s.n; ++i)
        if (s.block_size[s.macro[an[i]]] != s.block_size[s.macro[i]])
            rep.preserves_entropy = false;

    // sigma_n^q is affine in q, so nonnegativity for all q reduces to the
    // point masses.
    MacroKernel kn = kernel_power(s, n);
    MacroKernel km = kernel_power(s, n - 1);
    rep.sigma_nonneg_all_q = true;
    rep.delta_nonneg_all_q = true;
    rep.halfspace_sign.resize(s.k);
    for (int a = 0; a < s.k; ++a) {
        LogValue row;
        for (int b = 0; b < s.k; ++b)
            if (kn.rows[a][b] != 0) row += kn.rows[a][b] * boltzmann_entropy(s, b);
        if ((row - boltzmann_entropy(s, a)).sign() < 0) rep.sigma_nonneg_all_q = false;

        LogValue drow;
        for (int b = 0; b < s.k; ++b) {
            Rational coeff = kn.rows[a][b] - km.rows[a][b];
            if (coeff != 0) drow += coeff * boltzmann_entropy(s, b);
        }
        rep.halfspace_sign[a] = drow.sign();
        if (rep.halfspace_sign[a] < 0) rep.delta_nonneg_all_q = false;
    }
    if (rep.sigma_nonneg_all_q != rep.preserves_entropy)
        throw IdentityError("all-q positivity is not equivalent to entropy preservation");
    return rep;
}

}  // namespace micromacro
