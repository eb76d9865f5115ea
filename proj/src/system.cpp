#include "micromacro/system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "micromacro/census.hpp"
#include "micromacro/errors.hpp"

namespace micromacro {

std::vector<int> compact_labels(const std::vector<int>& labels, int* count_out) {
    std::map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int l : labels) {
        auto [it, fresh] = remap.emplace(l, static_cast<int>(remap.size()));
        out.push_back(it->second);
        (void)fresh;
    }
    if (count_out) *count_out = static_cast<int>(remap.size());
    return out;
}

namespace {

bool is_permutation_of_range(const std::vector<int>& v) {
    std::vector<bool> seen(v.size(), false);
    for (int x : v) {
        if (x < 0 || x >= static_cast<int>(v.size()) || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

std::vector<int> inverse_permutation(const std::vector<int>& v) {
    std::vector<int> inv(v.size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i) inv[v[i]] = i;
    return inv;
}

}  // namespace

System validate_system(std::vector<int> alpha, std::vector<int> macro,
                       std::optional<std::vector<int>> reversion,
                       std::optional<std::vector<Rational>> values_by_label,
                       std::optional<std::vector<std::string>> names_by_label) {
    System s;
    s.n = static_cast<int>(alpha.size());
    if (s.n == 0) throw ValidationError("EmptySystem: no microstates");
    if (static_cast<int>(macro.size()) != s.n)
        throw ValidationError("macro labeling has wrong length");
    if (!is_permutation_of_range(alpha))
        throw ValidationError("NotAPermutation: alpha is not a bijection");
    if (reversion) {
        if (static_cast<int>(reversion->size()) != s.n)
            throw ValidationError("reversion has wrong length");
        if (!is_permutation_of_range(*reversion))
            throw ValidationError("NotAPermutation: reversion is not a bijection");
        const auto& r = *reversion;
        auto alpha_inv = inverse_permutation(alpha);
        for (int i = 0; i < s.n; ++i) {
            if (r[r[i]] != i) throw ValidationError("BadReversion: r*r != identity");
            if (r[alpha[r[i]]] != alpha_inv[i])
                throw ValidationError("BadReversion: r*alpha*r != alpha^-1");
        }
    }

    // Compact labels, remapping the optional per-label metadata along.
    std::map<int, int> remap;
    for (int l : macro) remap.emplace(l, static_cast<int>(remap.size()));
    s.k = static_cast<int>(remap.size());
    s.alpha = std::move(alpha);
    s.macro.resize(s.n);
    for (int i = 0; i < s.n; ++i) s.macro[i] = remap.at(macro[i]);
    s.block_size.assign(s.k, 0);
    for (int l : s.macro) ++s.block_size[l];
    s.reversion = std::move(reversion);

    auto remap_meta = [&](auto& src, auto& dst, const char* what) {
        if (!src) return;
        dst.emplace(s.k);
        for (const auto& [old_label, new_label] : remap) {
            if (old_label < 0 || old_label >= static_cast<int>(src->size()))
                throw ValidationError(std::string(what) + ": missing entry for a used label");
            (*dst)[new_label] = (*src)[old_label];
        }
    };
    remap_meta(values_by_label, s.macro_values, "macro values");
    remap_meta(names_by_label, s.macro_names, "macro names");
    if (s.macro_values) {
        std::set<Rational> distinct(s.macro_values->begin(), s.macro_values->end());
        if (static_cast<int>(distinct.size()) != s.k)
            throw ValidationError("macro values must be distinct per label");
    }
    return s;
}

void check_distribution(const System& s, const MacroDistribution& q) {
    if (static_cast<int>(q.size()) != s.k)
        throw ValidationError("distribution has wrong length");
    Rational sum = 0;
    for (const auto& w : q) {
        if (w < 0) throw ValidationError("distribution has a negative weight");
        sum += w;
    }
    if (sum != 1) throw ValidationError("distribution does not sum to 1");
}

MacroDistribution point_mass(const System& s, int label) {
    MacroDistribution q(s.k, frac(0));
    q.at(label) = 1;
    return q;
}

MacroDistribution uniform_on_labels(const System& s) {
    return MacroDistribution(s.k, frac(1, s.k));
}

MacroDistribution macro_measure(const System& s) {
    MacroDistribution p(s.k);
    for (int a = 0; a < s.k; ++a) p[a] = frac(s.block_size[a], s.n);
    return p;
}

LogValue boltzmann_entropy(const System& s, int label) {
    return LogValue::log_integer(s.block_size.at(label));
}

LogValue boltzmann_entropy_micro(const System& s, int i) {
    return boltzmann_entropy(s, s.macro.at(i));
}

LogValue shannon_entropy(const MacroDistribution& q) {
    LogValue h;
    for (const auto& w : q)
        if (w != 0) h -= w * LogValue::log_rational(w);
    return h;
}

LogValue shannon_entropy_micro(const std::vector<Rational>& dist) {
    LogValue h;
    for (const auto& w : dist)
        if (w != 0) h -= w * LogValue::log_rational(w);
    return h;
}

LogValue mean_boltzmann(const System& s, const MacroDistribution& q) {
    check_distribution(s, q);
    LogValue out;
    for (int a = 0; a < s.k; ++a)
        if (q[a] != 0) out += q[a] * boltzmann_entropy(s, a);
    return out;
}

std::vector<Rational> coarse_grain(const System& s, const MacroDistribution& q) {
    check_distribution(s, q);
    std::vector<Rational> cq(s.n);
    for (int i = 0; i < s.n; ++i) cq[i] = q[s.macro[i]] / s.block_size[s.macro[i]];
    return cq;
}

EntropyClassReport entropy_classes(const System& s) {
    EntropyClassReport rep;
    for (int i = 0; i < s.n; ++i) {
        long before = s.block_size[s.macro[i]];
        long after = s.block_size[s.macro[s.alpha[i]]];
        if (after < before)
            rep.decreasing.push_back(i);
        else if (after == before)
            rep.constant.push_back(i);
        else
            rep.increasing.push_back(i);
    }
    rep.d_ratio = frac(static_cast<long>(rep.decreasing.size()), s.n);
    rep.c_ratio = frac(static_cast<long>(rep.constant.size()), s.n);
    rep.i_ratio = frac(static_cast<long>(rep.increasing.size()), s.n);
    if (rep.d_ratio + rep.c_ratio + rep.i_ratio != 1)
        throw IdentityError("entropy class ratios do not sum to 1");
    return rep;
}

EquilibriumReport equilibrium_report(const System& s) {
    long max_size = *std::max_element(s.block_size.begin(), s.block_size.end());
    EquilibriumReport rep;
    int dominant = -1;
    int dominant_count = 0;
    for (int a = 0; a < s.k; ++a)
        if (s.block_size[a] == max_size) {
            dominant = a;
            ++dominant_count;
        }
    for (int i = 0; i < s.n; ++i)
        if (s.block_size[s.macro[i]] == max_size) rep.equilibrium.push_back(i);
    rep.ratio = frac(static_cast<long>(rep.equilibrium.size()), s.n);
    rep.eps = 1 - rep.ratio;
    rep.unique_dominant = dominant_count == 1;
    if (rep.unique_dominant) {
        rep.s_dominant = boltzmann_entropy(s, dominant);
        rep.upper_bound = LogValue::log_integer(s.n);
        rep.lower_bound = LogValue::log_rational(rep.ratio) + rep.upper_bound;
        if ((rep.s_dominant - rep.lower_bound).sign() < 0 ||
            (rep.upper_bound - rep.s_dominant).sign() < 0)
            throw IdentityError("dominant equilibrium sandwich bound failed");
    }
    return rep;
}

std::vector<std::vector<int>> alpha_cycles(const System& s) {
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(s.n, false);
    for (int i = 0; i < s.n; ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        for (int j = i; !seen[j]; j = s.alpha[j]) {
            seen[j] = true;
            cyc.push_back(j);
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

BigInt order_of_alpha(const System& s) {
    BigInt order = 1;
    for (const auto& cyc : alpha_cycles(s))
        mpz_lcm_ui(order.get_mpz_t(), order.get_mpz_t(), cyc.size());
    return order;
}

std::vector<int> alpha_power(const System& s, long t) {
    std::vector<int> out(s.n);
    std::iota(out.begin(), out.end(), 0);
    std::vector<int> step = t >= 0 ? s.alpha : inverse_permutation(s.alpha);
    for (long u = 0; u < (t >= 0 ? t : -t); ++u)
        for (int i = 0; i < s.n; ++i) out[i] = step[out[i]];
    return out;
}

std::pair<long, long> monotone_runs(const System& s, int n) {
    if (n < 1) throw ValidationError("monotone_runs: length must be >= 1");
    long dec = 0, inc = 0;
    for (int i = 0; i < s.n; ++i) {
        bool all_dec = true, all_inc = true;
        int j = i;
        for (int t = 0; t < n && (all_dec || all_inc); ++t) {
            int next = s.alpha[j];
            long before = s.block_size[s.macro[j]];
            long after = s.block_size[s.macro[next]];
            all_dec = all_dec && after < before;
            all_inc = all_inc && after > before;
            j = next;
        }
        if (all_dec) ++dec;
        if (all_inc) ++inc;
    }
    return {dec, inc};
}

int arrow_of_time(const System& s, int i) {
    if (i < 0 || i >= s.n) throw ValidationError("arrow_of_time: index out of range");
    int len = 0;
    int j = i;
    // A run can never exceed n steps: strictly increasing sizes are bounded.
    while (len < s.n) {
        int next = s.alpha[j];
        if (s.block_size[s.macro[next]] <= s.block_size[s.macro[j]]) break;
        j = next;
        ++len;
    }
    return len;
}

ReversionReport reversion_report(const System& s) {
    if (!s.reversion) throw ValidationError("NoReversion: system has no reversion map");
    const auto& r = *s.reversion;
    ReversionReport rep;
    rep.invariant = true;
    rep.entropy_preserving = true;
    std::vector<int> descended(s.k, -1);
    bool equivariant = true;
    for (int i = 0; i < s.n; ++i) {
        int a = s.macro[i], b = s.macro[r[i]];
        if (a != b) rep.invariant = false;
        if (s.block_size[a] != s.block_size[b]) rep.entropy_preserving = false;
        if (descended[a] == -1)
            descended[a] = b;
        else if (descended[a] != b)
            equivariant = false;
    }
    rep.equivariant = equivariant;
    if (equivariant) {
        rep.descended = std::move(descended);
        // r itself is the isomorphism with the inverse system; cross-check
        // with the blind search where the relabeling scan is affordable.
        if (s.n <= 7 && !is_isomorphic(s, inverse_system(s)))
            throw IdentityError("equivariant reversion but no isomorphism with the inverse");
    }
    return rep;
}

System inverse_system(const System& s) {
    System inv = s;
    inv.alpha = inverse_permutation(s.alpha);
    return inv;
}

}  // namespace micromacro
