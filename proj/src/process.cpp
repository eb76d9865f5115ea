#include "micromacro/process.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "micromacro/budget.hpp"
#include "micromacro/errors.hpp"
#include "micromacro/markov.hpp"

namespace micromacro {

namespace {

void check_labels(const System& s, const std::vector<int>& labels) {
    if (labels.empty()) throw ValidationError("empty label sequence");
    for (int a : labels)
        if (a < 0 || a >= s.k) throw ValidationError("label out of range");
}

// Realized label paths of a given length, with multiplicity = path count.
std::map<std::vector<int>, long> realized_paths(const System& s, int length) {
    std::map<std::vector<int>, long> out;
    for (int i = 0; i < s.n; ++i) {
        std::vector<int> path;
        path.reserve(length);
        int j = i;
        for (int t = 0; t < length; ++t) {
            path.push_back(s.macro[j]);
            j = s.alpha[j];
        }
        ++out[path];
    }
    return out;
}

}  // namespace

long path_count(const System& s, const std::vector<int>& labels) {
    check_labels(s, labels);
    long count = 0;
    for (int i = 0; i < s.n; ++i) {
        if (s.macro[i] != labels[0]) continue;
        int j = i;
        bool ok = true;
        for (size_t t = 1; t < labels.size() && ok; ++t) {
            j = s.alpha[j];
            ok = s.macro[j] == labels[t];
        }
        if (ok) ++count;
    }
    return count;
}

Rational cylinder_prob(const System& s, const MacroDistribution& q,
                       const std::vector<int>& labels) {
    check_distribution(s, q);
    check_labels(s, labels);
    int a0 = labels[0];
    return q[a0] * frac(path_count(s, labels), s.block_size[a0]);
}

MacroDistribution marginal(const System& s, const MacroDistribution& q, long n) {
    if (n < 0) throw ValidationError("marginal: negative time");
    MacroDistribution out = apply_kernel(kernel_power(s, n), q);
    // Cross-check through the micro pushforward of the coarse-grained start.
    auto cq = coarse_grain(s, q);
    auto an = alpha_power(s, n);
    MacroDistribution direct(s.k, frac(0));
    for (int i = 0; i < s.n; ++i) direct[s.macro[an[i]]] += cq[i];
    if (direct != out) throw IdentityError("marginal disagrees with the micro pushforward");
    return out;
}

Rational conditional(const System& s, const std::vector<int>& labels, int next_label) {
    long denom = path_count(s, labels);
    if (denom == 0) throw ValidationError("ConditioningOnNull: history has no members");
    std::vector<int> extended = labels;
    extended.push_back(next_label);
    return frac(path_count(s, extended), denom);
}

MarkovianityReport markovianity_check(const System& s, int depth) {
    if (depth < 2) throw ValidationError("markovianity_check: depth must be >= 2");
    MarkovianityReport rep;
    rep.equivariant = true;
    std::vector<int> image(s.k, -1);
    for (int i = 0; i < s.n; ++i) {
        int a = s.macro[i], b = s.macro[s.alpha[i]];
        if (image[a] == -1)
            image[a] = b;
        else if (image[a] != b)
            rep.equivariant = false;
    }
    rep.markov = rep.equivariant;

    MacroKernel one = kernel(s);
    long order_cap = 1000;
    BigInt ord = order_of_alpha(s);
    long guaranteed = ord + 1 > order_cap ? order_cap : static_cast<long>(ord.get_si()) + 1;
    long max_len = std::max<long>(depth, guaranteed);

    for (long len = 2; len <= max_len; ++len) {
        bool user_range = len <= depth;
        if (!rep.equivariant || user_range) {
            for (const auto& [path, cnt] : realized_paths(s, static_cast<int>(len))) {
                (void)cnt;
                std::vector<int> history(path.begin(), path.end() - 1);
                int next = path.back();
                Rational cond = conditional(s, history, next);
                Rational one_step = one.rows[history.back()][next];
                if (cond != one_step) {
                    if (rep.equivariant)
                        throw IdentityError("equivariant system produced a non-Markov conditional");
                    if (!rep.witness) {
                        rep.witness = MarkovWitness{history, next, cond, one_step};
                    }
                }
            }
        }
        if (rep.witness && len >= depth) break;
        if (rep.equivariant && len >= depth) break;
    }
    if (!rep.equivariant && !rep.witness)
        throw IdentityError("no Markov violation found for a non-equivariant system");
    return rep;
}

StationarityReport stationarity_check(const System& s, const MacroDistribution& q, int depth) {
    if (depth < 1) throw ValidationError("stationarity_check: depth must be >= 1");
    StationarityReport rep;
    rep.stationary = true;
    auto cq = coarse_grain(s, q);
    for (int len = 1; len <= depth; ++len) {
        // Tuple probabilities at shift k, realized tuples only; an unrealized
        // tuple has probability 0 at every shift.
        std::vector<std::map<std::vector<int>, Rational>> by_shift(depth + 1);
        for (long k = 0; k <= depth; ++k) {
            auto ak = alpha_power(s, k);
            for (int i = 0; i < s.n; ++i) {
                if (cq[i] == 0) continue;
                std::vector<int> path;
                path.reserve(len);
                int j = ak[i];
                for (int t = 0; t < len; ++t) {
                    path.push_back(s.macro[j]);
                    j = s.alpha[j];
                }
                by_shift[k][std::move(path)] += cq[i];
            }
        }
        for (long k = 1; k <= depth && rep.stationary; ++k) {
            std::set<std::vector<int>> keys;
            for (const auto& [t, w] : by_shift[0]) keys.insert(t), (void)w;
            for (const auto& [t, w] : by_shift[k]) keys.insert(t), (void)w;
            for (const auto& t : keys) {
                auto get = [&](long shift) {
                    auto it = by_shift[shift].find(t);
                    return it == by_shift[shift].end() ? frac(0) : it->second;
                };
                if (get(0) != get(k)) {
                    rep.stationary = false;
                    rep.witness_tuple = t;
                    rep.witness_shift = k;
                    break;
                }
            }
        }
        if (!rep.stationary) break;
    }
    return rep;
}

ReverseProcessReport reverse_process_check(const System& s, int depth) {
    if (!s.reversion) throw ValidationError("NoReversion: system has no reversion map");
    if (depth < 1) throw ValidationError("reverse_process_check: depth must be >= 1");
    const auto& r = *s.reversion;
    ReverseProcessReport rep;
    rep.reversible = true;
    for (int len = 2; len <= depth + 1; ++len) {
        auto paths = realized_paths(s, len);
        // |[[ r(a_n), ..., r(a_0) ]]| counted over subsets: i is in r(a) iff
        // r(i) is in a.
        auto reversed_r_count = [&](const std::vector<int>& tuple) {
            long count = 0;
            for (int i = 0; i < s.n; ++i) {
                int j = i;
                bool ok = true;
                for (int t = 0; t < len && ok; ++t) {
                    ok = s.macro[r[j]] == tuple[len - 1 - t];
                    if (t + 1 < len) j = s.alpha[j];
                }
                if (ok) ++count;
            }
            return count;
        };
        for (const auto& [tuple, count] : paths) {
            if (count != reversed_r_count(tuple))
                throw IdentityError("reversion does not reverse path-block counts");
            std::vector<int> flipped(tuple.rbegin(), tuple.rend());
            auto it = paths.find(flipped);
            long flipped_count = it == paths.end() ? 0 : it->second;
            if (count != flipped_count) rep.reversible = false;
        }
    }
    ReversionReport rr = reversion_report(s);
    if (rr.invariant && !rep.reversible)
        throw IdentityError("invariant reversion must make the process reversible");
    return rep;
}

}  // namespace micromacro
