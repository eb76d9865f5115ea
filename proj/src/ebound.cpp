#include "micromacro/ebound.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "micromacro/errors.hpp"
#include "micromacro/markov.hpp"

namespace micromacro {

namespace {

std::vector<int> inverse_permutation(const std::vector<int>& v) {
    std::vector<int> inv(v.size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i) inv[v[i]] = i;
    return inv;
}

// Stability of E itself, without the equilibrium corollary.
bool raw_stability(const System& s, const std::vector<bool>& in_E, int S) {
    auto inv = inverse_permutation(s.alpha);
    for (int i = 0; i < s.n; ++i) {
        if (!in_E[i] || in_E[inv[i]]) continue;
        int j = i;
        for (int t = 0; t <= S; ++t) {
            if (!in_E[j]) return false;
            j = s.alpha[j];
        }
    }
    return true;
}

}  // namespace

ReachingSystem reaching_system(const System& s, const std::vector<int>& E) {
    if (E.empty()) throw ValidationError("NotEBound: E is empty");
    std::vector<bool> in_E(s.n, false);
    for (int i : E) {
        if (i < 0 || i >= s.n) throw ValidationError("E contains an out-of-range microstate");
        if (in_E[i]) throw ValidationError("E contains a repeated microstate");
        in_E[i] = true;
    }
    for (const auto& cyc : alpha_cycles(s)) {
        if (std::none_of(cyc.begin(), cyc.end(), [&](int i) { return in_E[i]; }))
            throw ValidationError("NotEBound: the cycle through microstate " +
                                  std::to_string(cyc.front()) + " avoids E");
    }

    ReachingSystem rs;
    rs.E = E;
    std::sort(rs.E.begin(), rs.E.end());
    rs.e.assign(s.n, 0);
    auto inv = inverse_permutation(s.alpha);
    for (int start : rs.E) {
        int j = inv[start];
        for (int d = 1; !in_E[j]; j = inv[j], ++d) rs.e[j] = d;
    }
    // Forward-definition oracle.
    for (int i = 0; i < s.n; ++i) {
        int j = i, d = 0;
        while (!in_E[j]) {
            j = s.alpha[j];
            ++d;
        }
        if (d != rs.e[i]) throw IdentityError("reaching-time sweeps disagree");
    }
    rs.L = *std::max_element(rs.e.begin(), rs.e.end());
    rs.level_size.assign(rs.L + 1, 0);
    for (int v : rs.e) ++rs.level_size[v];

    rs.sys.n = s.n;
    rs.sys.alpha = s.alpha;
    rs.sys.macro = rs.e;
    rs.sys.k = rs.L + 1;
    rs.sys.block_size = rs.level_size;
    rs.sys.reversion = s.reversion;
    return rs;
}

EboundStructureReport structure_report(const ReachingSystem& rs) {
    const System& s = rs.sys;
    EboundStructureReport rep;
    rep.level_size = rs.level_size;
    rep.entry_count.assign(rs.L + 1, 0);
    for (int i : rs.E) ++rep.entry_count[rs.e[s.alpha[i]]];

    auto size_at = [&](int k) { return k > rs.L ? 0L : rs.level_size[k]; };
    for (int k = 0; k <= rs.L; ++k) {
        if (rep.entry_count[k] != size_at(k) - size_at(k + 1))
            throw IdentityError("entry count does not match the level-size difference");
        long tail = 0;
        for (int u = k; u <= rs.L; ++u) tail += rep.entry_count[u];
        if (tail != rs.level_size[k])
            throw IdentityError("level size does not match the entry-count tail sum");
    }
    if (*std::max_element(rs.level_size.begin(), rs.level_size.end()) !=
        static_cast<long>(rs.E.size()))
        throw IdentityError("E is not an equilibrium macrostate");

    MacroKernel t = kernel(s);
    for (int i = 1; i <= rs.L; ++i)
        for (int k = 0; k <= rs.L; ++k)
            if (t.rows[i][k] != frac(i - 1 == k ? 1 : 0))
                throw IdentityError("reaching kernel row is not a shift");
    for (int k = 0; k <= rs.L; ++k)
        if (t.rows[0][k] != frac(rep.entry_count[k], static_cast<long>(rs.E.size())))
            throw IdentityError("reaching kernel equilibrium row is wrong");

    rep.onto = std::all_of(rep.entry_count.begin(), rep.entry_count.end(),
                           [](long c) { return c > 0; });

    Rational total_arrow = 0;
    for (int i = 0; i < s.n; ++i) {
        int a = arrow_of_time(s, i);
        if (rep.onto && a != rs.e[i])
            throw IdentityError("arrow of time differs from the reaching time");
        total_arrow += a;
    }
    rep.mean_arrow = total_arrow / s.n;

    if (rep.onto) {
        EntropyClassReport classes = entropy_classes(s);
        rep.d = static_cast<long>(classes.decreasing.size());
        rep.c = static_cast<long>(classes.constant.size());
        rep.i = static_cast<long>(classes.increasing.size());
        long neq = 0;
        for (int k = 1; k <= rs.L; ++k) neq += rs.level_size[k];
        if (rep.d != size_at(1) || rep.i != neq ||
            rep.c != static_cast<long>(rs.E.size()) - size_at(1))
            throw IdentityError("D/C/I counts disagree with the level sizes");
        EquilibriumReport eq = equilibrium_report(s);
        std::vector<int> eq_sorted = eq.equilibrium;
        std::sort(eq_sorted.begin(), eq_sorted.end());
        if (eq_sorted != rs.E) throw IdentityError("equilibrium set is not E");

        Rational form1 = 0, form2 = 0;
        for (int k = 1; k <= rs.L; ++k) {
            form1 += frac(static_cast<long>(k) * rs.level_size[k], s.n);
            form2 += frac(static_cast<long>(k) * (k + 1) / 2 * rep.entry_count[k], s.n);
        }
        if (rep.mean_arrow != form1 || rep.mean_arrow != form2)
            throw IdentityError("mean arrow of time closed forms disagree");
    }
    return rep;
}

bool s_stability_check(const ReachingSystem& rs, int S) {
    if (S < 0) throw ValidationError("s_stability_check: negative duration");
    std::vector<bool> in_E(rs.sys.n, false);
    for (int i : rs.E) in_E[i] = true;
    if (!raw_stability(rs.sys, in_E, S)) return false;

    // E stable forces the equilibrium stable.
    long max_size = *std::max_element(rs.level_size.begin(), rs.level_size.end());
    std::vector<bool> in_eq(rs.sys.n, false);
    for (int i = 0; i < rs.sys.n; ++i) in_eq[i] = rs.level_size[rs.e[i]] == max_size;
    if (!raw_stability(rs.sys, in_eq, S))
        throw IdentityError("stable E left an unstable equilibrium");
    return true;
}

System double_cover(const System& s, const std::vector<int>& E) {
    auto inv = inverse_permutation(s.alpha);
    int n = s.n;
    std::vector<int> alpha_hat(2 * n), r(2 * n);
    for (int i = 0; i < n; ++i) {
        alpha_hat[i] = s.alpha[i];
        alpha_hat[n + i] = n + inv[i];
        r[i] = n + i;
        r[n + i] = i;
    }
    System base = validate_system(alpha_hat, std::vector<int>(2 * n, 0), r);
    std::vector<int> E_hat;
    for (int i : E) E_hat.push_back(i);
    for (int i : E) E_hat.push_back(n + i);
    return reaching_system(base, E_hat).sys;
}

DoubleCoverReport double_cover_report(const ReachingSystem& rs) {
    const int n = rs.sys.n;
    DoubleCoverReport rep;
    {
        System covered = double_cover(rs.sys, rs.E);
        std::vector<int> E_hat;
        for (int i : rs.E) E_hat.push_back(i);
        for (int i : rs.E) E_hat.push_back(n + i);
        rep.cover = reaching_system(covered, E_hat);
    }
    const ReachingSystem& cov = rep.cover;
    const auto& r = *cov.sys.reversion;

    if (cov.L != rs.L) throw IdentityError("double cover changed the largest reaching time");
    for (int k = 0; k <= rs.L; ++k)
        if (cov.level_size[k] != 2 * rs.level_size[k])
            throw IdentityError("double cover level size is not doubled");
    for (int i = 0; i < n; ++i)
        if (cov.e[i] != rs.e[i]) throw IdentityError("upper sheet reaching time changed");

    std::set<int> ehat(cov.E.begin(), cov.E.end());
    for (int i : cov.E)
        if (!ehat.count(r[i])) throw IdentityError("E-hat is not reversion-invariant");

    for (int S = 0; S <= rs.L + 1; ++S)
        if (s_stability_check(rs, S) != s_stability_check(cov, S))
            throw IdentityError("S-stability is not preserved by the double cover");

    EboundStructureReport base_rep = structure_report(rs);
    EboundStructureReport cover_rep = structure_report(cov);
    if (base_rep.onto != cover_rep.onto)
        throw IdentityError("surjectivity does not transfer to the double cover");
    rep.onto = base_rep.onto;

    if (rep.onto) {
        if (frac(cover_rep.d, 2 * n) != frac(base_rep.d, n) ||
            frac(cover_rep.c, 2 * n) != frac(base_rep.c, n) ||
            frac(cover_rep.i, 2 * n) != frac(base_rep.i, n))
            throw IdentityError("double cover changed a D/C/I ratio");
        if (cover_rep.mean_arrow != base_rep.mean_arrow)
            throw IdentityError("double cover changed the mean arrow of time");

        // Excursion midpoint criterion: an interior point has an entropy-fixed
        // mirror image exactly when it sits at the exact middle.
        std::vector<bool> in_ehat(cov.sys.n, false);
        for (int i : cov.E) in_ehat[i] = true;
        for (int start : cov.E) {
            if (in_ehat[cov.sys.alpha[start]]) continue;
            std::vector<int> interior;
            for (int j = cov.sys.alpha[start]; !in_ehat[j]; j = cov.sys.alpha[j])
                interior.push_back(j);
            ++rep.excursions;
            long k = static_cast<long>(interior.size());
            for (int x : interior) {
                long u = cov.e[x];
                bool fixed = cov.level_size[cov.e[r[x]]] == cov.level_size[cov.e[x]];
                if (fixed != (2 * u == k + 1))
                    throw IdentityError("excursion midpoint criterion failed");
            }
        }
    }
    return rep;
}

}  // namespace micromacro
