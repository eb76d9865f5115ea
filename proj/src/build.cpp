#include "micromacro/build.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "micromacro/budget.hpp"
#include "micromacro/errors.hpp"

namespace micromacro {

int kl_level(const std::vector<long>& counts, long N, const std::vector<Rational>& ref,
             const LogValue& eps, int k) {
    LogValue d;
    for (size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) continue;
        Rational q = frac(counts[c], N);
        d += q * (LogValue::log_rational(q) - LogValue::log_rational(ref[c]));
    }
    for (int l = 1; l < k; ++l)
        if ((d - frac(l) * eps).sign() < 0) return l;
    return k;
}

namespace {

// Product states over base_count^N with componentwise dynamics, labeled by
// the KL level of the empirical distribution of obs classes against ref.
System tuple_kl_system(long base_count, const std::vector<int>& base_alpha,
                       const std::vector<int>& obs, const std::vector<Rational>& ref,
                       int N, const LogValue& eps, int k) {
    if (N < 1 || k < 1) throw ValidationError("tuple system needs N >= 1 and k >= 1");
    if (eps.sign() <= 0) throw ValidationError("KL level width must be positive");
    BigInt total = 1;
    for (int s = 0; s < N; ++s) total *= base_count;
    long n = charge_budget(total, "empirical enumeration");

    int classes = static_cast<int>(ref.size());
    std::map<std::vector<long>, int> level_of_counts;
    std::vector<int> alpha(n), macro(n);
    std::vector<int> digits(N, 0);
    for (long id = 0; id < n; ++id) {
        long image = 0;
        for (int s = N - 1; s >= 0; --s) image = image * base_count + base_alpha[digits[s]];
        alpha[id] = static_cast<int>(image);
        std::vector<long> counts(classes, 0);
        for (int s = 0; s < N; ++s) ++counts[obs[digits[s]]];
        auto [it, fresh] = level_of_counts.try_emplace(counts, 0);
        if (fresh) it->second = kl_level(counts, N, ref, eps, k);
        macro[id] = it->second;
        for (int s = 0; s < N && ++digits[s] == base_count; ++s) digits[s] = 0;
    }
    std::vector<Rational> level_value(k + 1);
    for (int l = 0; l <= k; ++l) level_value[l] = l;
    return validate_system(std::move(alpha), std::move(macro), std::nullopt,
                           std::move(level_value));
}

}  // namespace

System combine(CombineKind kind, const System& s1, const System& s2) {
    switch (kind) {
        case CombineKind::DisjointUnion: {
            std::vector<int> alpha, macro;
            for (int i = 0; i < s1.n; ++i) {
                alpha.push_back(s1.alpha[i]);
                macro.push_back(s1.macro[i]);
            }
            for (int i = 0; i < s2.n; ++i) {
                alpha.push_back(s1.n + s2.alpha[i]);
                macro.push_back(s1.k + s2.macro[i]);
            }
            std::optional<std::vector<std::string>> names;
            if (s1.macro_names && s2.macro_names) {
                names.emplace(*s1.macro_names);
                names->insert(names->end(), s2.macro_names->begin(), s2.macro_names->end());
            }
            return validate_system(std::move(alpha), std::move(macro), std::nullopt,
                                   std::nullopt, std::move(names));
        }
        case CombineKind::Product: {
            int n = s1.n * s2.n;
            std::vector<int> alpha(n), macro(n);
            for (int i = 0; i < s1.n; ++i)
                for (int j = 0; j < s2.n; ++j) {
                    alpha[i * s2.n + j] = s1.alpha[i] * s2.n + s2.alpha[j];
                    macro[i * s2.n + j] = s1.macro[i] * s2.k + s2.macro[j];
                }
            std::optional<std::vector<std::string>> names;
            if (s1.macro_names && s2.macro_names) {
                names.emplace();
                for (int a = 0; a < s1.k; ++a)
                    for (int b = 0; b < s2.k; ++b)
                        names->push_back("(" + (*s1.macro_names)[a] + "," +
                                         (*s2.macro_names)[b] + ")");
            }
            return validate_system(std::move(alpha), std::move(macro), std::nullopt,
                                   std::nullopt, std::move(names));
        }
        case CombineKind::Reunion: {
            if (s1.macro_names.has_value() != s2.macro_names.has_value())
                throw ValidationError(
                    "LabelUniverseMismatch: reunion needs names on both sides or neither");
            std::vector<int> map1(s1.k), map2(s2.k);
            std::optional<std::vector<std::string>> names;
            if (s1.macro_names) {
                std::map<std::string, int> universe;
                names.emplace();
                auto intern = [&](const std::string& name) {
                    auto [it, fresh] = universe.emplace(name, static_cast<int>(universe.size()));
                    if (fresh) names->push_back(name);
                    return it->second;
                };
                for (int a = 0; a < s1.k; ++a) map1[a] = intern((*s1.macro_names)[a]);
                for (int b = 0; b < s2.k; ++b) map2[b] = intern((*s2.macro_names)[b]);
            } else {
                for (int a = 0; a < s1.k; ++a) map1[a] = a;
                for (int b = 0; b < s2.k; ++b) map2[b] = b;
            }
            std::vector<int> alpha, macro;
            for (int i = 0; i < s1.n; ++i) {
                alpha.push_back(s1.alpha[i]);
                macro.push_back(map1[s1.macro[i]]);
            }
            for (int i = 0; i < s2.n; ++i) {
                alpha.push_back(s1.n + s2.alpha[i]);
                macro.push_back(map2[s2.macro[i]]);
            }
            return validate_system(std::move(alpha), std::move(macro), std::nullopt,
                                   std::nullopt, std::move(names));
        }
        case CombineKind::ExtensiveJoint: {
            if (!s1.macro_values || !s2.macro_values)
                throw ValidationError("NotNumeric: extensive joint needs numeric labels");
            std::map<Rational, int> sums;
            for (int a = 0; a < s1.k; ++a)
                for (int b = 0; b < s2.k; ++b)
                    sums.emplace((*s1.macro_values)[a] + (*s2.macro_values)[b], 0);
            int next = 0;
            std::vector<Rational> values;
            for (auto& [value, id] : sums) {
                id = next++;
                values.push_back(value);
            }
            int n = s1.n * s2.n;
            std::vector<int> alpha(n), macro(n);
            for (int i = 0; i < s1.n; ++i)
                for (int j = 0; j < s2.n; ++j) {
                    alpha[i * s2.n + j] = s1.alpha[i] * s2.n + s2.alpha[j];
                    macro[i * s2.n + j] =
                        sums.at((*s1.macro_values)[s1.macro[i]] + (*s2.macro_values)[s2.macro[j]]);
                }
            return validate_system(std::move(alpha), std::move(macro), std::nullopt,
                                   std::move(values));
        }
    }
    throw ValidationError("unknown combine kind");
}

System coarsen(const System& s, const std::vector<int>& relabel) {
    if (static_cast<int>(relabel.size()) != s.k)
        throw ValidationError("coarsen: one entry per label required");
    std::vector<int> macro(s.n);
    for (int i = 0; i < s.n; ++i) macro[i] = relabel[s.macro[i]];
    return validate_system(s.alpha, std::move(macro), s.reversion);
}

System restrict_to(const System& s, const std::vector<int>& U) {
    if (U.empty()) throw ValidationError("EmptyRestriction: U is empty");
    std::vector<int> u = U;
    std::sort(u.begin(), u.end());
    if (std::unique(u.begin(), u.end()) != u.end())
        throw ValidationError("restriction set has repeated microstates");
    std::vector<int> pos(s.n, -1);
    for (size_t t = 0; t < u.size(); ++t) {
        if (u[t] < 0 || u[t] >= s.n)
            throw ValidationError("restriction set is out of range");
        pos[u[t]] = static_cast<int>(t);
    }
    std::vector<int> alpha(u.size()), macro(u.size());
    for (size_t t = 0; t < u.size(); ++t) {
        int j = s.alpha[u[t]];
        while (pos[j] == -1) j = s.alpha[j];
        alpha[t] = pos[j];
        macro[t] = s.macro[u[t]];
    }
    return validate_system(std::move(alpha), std::move(macro), std::nullopt,
                           s.macro_values, s.macro_names);
}

System iterate_labels(const System& s, int l) {
    if (l < 1) throw ValidationError("iteration length must be >= 1");
    std::map<std::vector<int>, int> words;
    std::vector<int> macro(s.n);
    for (int i = 0; i < s.n; ++i) {
        std::vector<int> word;
        int j = i;
        for (int t = 0; t < l; ++t) {
            word.push_back(s.macro[j]);
            j = s.alpha[j];
        }
        macro[i] = words.emplace(std::move(word), static_cast<int>(words.size())).first->second;
    }
    return validate_system(s.alpha, std::move(macro));
}

System zones(const System& s) {
    long max_size = *std::max_element(s.block_size.begin(), s.block_size.end());
    std::vector<int> macro(s.n);
    for (int i = 0; i < s.n; ++i) macro[i] = static_cast<int>(s.block_size[s.macro[i]]);
    std::vector<Rational> values(max_size + 1);
    for (long v = 0; v <= max_size; ++v) values[v] = v;
    return validate_system(s.alpha, std::move(macro), s.reversion, std::move(values));
}

System empirical_system(const System& base, int N, const LogValue& eps, int k) {
    return tuple_kl_system(base.n, base.alpha, base.macro, macro_measure(base), N, eps, k);
}

System group_action_system(const std::vector<std::vector<int>>& action,
                           const std::vector<int>& inverse_of, int N,
                           bool first_coordinate, const LogValue& eps, int k) {
    if (action.empty()) throw ValidationError("group action needs at least one element");
    int w = static_cast<int>(action.size());
    int p = static_cast<int>(action.front().size());
    if (static_cast<int>(inverse_of.size()) != w)
        throw ValidationError("inverse pairing has wrong length");
    for (int j = 0; j < w; ++j) {
        // validate_system also checks bijectivity of each action map.
        System probe = validate_system(action[j], std::vector<int>(p, 0));
        (void)probe;
        int jj = inverse_of[j];
        if (jj < 0 || jj >= w || inverse_of[jj] != j)
            throw ValidationError("NotClosedUnderInverse: bad inverse pairing");
        for (int x = 0; x < p; ++x)
            if (action[jj][action[j][x]] != x)
                throw ValidationError("NotClosedUnderInverse: paired map is not the inverse");
    }
    int base_count = p * w;
    std::vector<int> base_alpha(base_count), obs(base_count);
    for (int x = 0; x < p; ++x)
        for (int j = 0; j < w; ++j) {
            base_alpha[x * w + j] = action[j][x] * w + j;
            obs[x * w + j] = first_coordinate ? x : x * w + j;
        }
    int classes = first_coordinate ? p : base_count;
    std::vector<Rational> ref(classes, frac(1, classes));
    return tuple_kl_system(base_count, base_alpha, obs, ref, N, eps, k);
}

System z2d_system(int d, int N, const LogValue& eps, int k) {
    if (d < 1) throw ValidationError("z2d system needs d >= 1");
    int p = 2 * d;
    int w = p - 1;  // v = 1..2d-1
    int base_count = p * w;
    std::vector<int> base_alpha(base_count), obs(base_count);
    for (int x = 0; x < p; ++x)
        for (int j = 0; j < w; ++j) {
            int v = j + 1;
            base_alpha[x * w + j] = ((x + v) % p) * w + j;
            obs[x * w + j] = x < d ? 0 : 1;
        }
    std::vector<Rational> ref{frac(1, 2), frac(1, 2)};
    return tuple_kl_system(base_count, base_alpha, obs, ref, N, eps, k);
}

System max_decreasing_system(const std::map<long, long>& parts) {
    long n = 0;
    long best = 0;
    for (const auto& [size, count] : parts) {
        if (size < 1 || count < 1)
            throw ValidationError("BadPartition: sizes and multiplicities must be positive");
        n += size * count;
        best = std::max(best, size * count);
    }
    if (n == 0) throw ValidationError("BadPartition: empty partition");

    // Tableau with best = max size*count columns. The count blocks of each
    // size occupy disjoint runs of consecutive columns, one cell per column,
    // and every column is sorted by size from the top down. Following the
    // cycle down a column only ever shrinks the block, so the only
    // non-decreasing steps are the best many jumps to the next column top.
    long next_block = 0;
    std::map<long, long> first_block;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        first_block[it->first] = next_block;
        next_block += it->second;
    }
    std::vector<int> macro;
    macro.reserve(n);
    for (long col = 0; col < best; ++col)
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            auto [size, count] = *it;
            if (size * count <= col) continue;
            macro.push_back(static_cast<int>(first_block[size] + col / size));
        }
    std::vector<int> alpha(n);
    for (long i = 0; i < n; ++i) alpha[i] = static_cast<int>((i + 1) % n);
    return validate_system(std::move(alpha), std::move(macro));
}

System remark_system(int n) {
    if (n < 2) throw ValidationError("remark system needs n >= 2");
    // Microstates: bottom k -> k-1 for k in [1,n]; top k -> n-1+k for [1,n^2].
    int total = n * n + n;
    std::vector<int> alpha(total), macro(total);
    for (int key = 1; key <= n; ++key) alpha[key - 1] = n - 1 + key;
    for (int key = 1; key <= n - 1; ++key) alpha[n - 1 + key] = key;
    for (int key = n; key <= n * n - 1; ++key) alpha[n - 1 + key] = n + key;
    alpha[n - 1 + n * n] = 0;
    for (int i = 0; i < total; ++i) macro[i] = i < n ? 0 : 1;
    return validate_system(std::move(alpha), std::move(macro), std::nullopt, std::nullopt,
                           std::vector<std::string>{"bottom", "top"});
}

}  // namespace micromacro
