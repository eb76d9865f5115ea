#include "micromacro/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "micromacro/budget.hpp"
#include "micromacro/errors.hpp"

namespace micromacro {

namespace {

std::vector<long> cycle_type(const std::vector<int>& alpha) {
    int n = static_cast<int>(alpha.size());
    std::vector<bool> seen(n, false);
    std::vector<long> type;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        long len = 0;
        for (int j = i; !seen[j]; j = alpha[j]) {
            seen[j] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end(), std::greater<>());
    return type;
}

std::vector<long> size_multiset(const System& s) {
    std::vector<long> sizes = s.block_size;
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Encoding of the system under the relabeling beta (microstate i becomes
// beta[i]).
CanonicalForm relabeled(const System& s, const std::vector<int>& beta) {
    CanonicalForm f;
    f.alpha.resize(s.n);
    std::vector<int> macro(s.n);
    for (int i = 0; i < s.n; ++i) {
        f.alpha[beta[i]] = beta[s.alpha[i]];
        macro[beta[i]] = s.macro[i];
    }
    f.macro = compact_labels(macro);
    return f;
}

// Applies g to a (permutation, labels) pair: conjugates the permutation and
// pushes the partition forward.
std::pair<std::vector<int>, std::vector<int>> transport(const std::vector<int>& alpha,
                                                        const std::vector<int>& labels,
                                                        const std::vector<int>& g) {
    int n = static_cast<int>(alpha.size());
    std::vector<int> a2(n), l2(n);
    for (int i = 0; i < n; ++i) {
        a2[g[i]] = g[alpha[i]];
        l2[g[i]] = labels[i];
    }
    return {std::move(a2), compact_labels(l2)};
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

bool CanonicalForm::operator<(const CanonicalForm& o) const {
    if (alpha != o.alpha) return alpha < o.alpha;
    return macro < o.macro;
}

CanonicalForm canonical_form(const System& s) {
    charge_budget(factorial(s.n), "canonical form relabeling scan");
    std::vector<int> beta(s.n);
    std::iota(beta.begin(), beta.end(), 0);
    CanonicalForm best = relabeled(s, beta);
    while (std::next_permutation(beta.begin(), beta.end())) {
        CanonicalForm f = relabeled(s, beta);
        if (f < best) best = f;
    }
    return best;
}

bool is_isomorphic(const System& s1, const System& s2) {
    if (s1.n != s2.n || s1.k != s2.k) return false;
    if (cycle_type(s1.alpha) != cycle_type(s2.alpha)) return false;
    if (size_multiset(s1) != size_multiset(s2)) return false;
    charge_budget(factorial(s1.n), "isomorphism witness scan");
    std::vector<int> beta(s1.n);
    std::iota(beta.begin(), beta.end(), 0);
    CanonicalForm target;
    target.alpha = s2.alpha;
    target.macro = compact_labels(s2.macro);
    do {
        if (relabeled(s1, beta) == target) return true;
    } while (std::next_permutation(beta.begin(), beta.end()));
    return false;
}

BigInt stirling2(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    std::vector<BigInt> row(n + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, n); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

BigInt count_labeled(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw ValidationError("count_labeled requires 1 <= k <= n");
    return factorial(n) * factorial(k) * stirling2(n, k);
}

std::vector<std::vector<long>> partitions_of(int n) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    // Reverse-lexicographic descent: largest first part first.
    auto rec = [&](auto&& self, long rest, long cap) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (long p = std::min<long>(rest, cap); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) return {{}};
    std::vector<int> rgs(n, 0);
    auto rec = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == n) {
            out.push_back(rgs);
            return;
        }
        for (int v = 0; v <= max_used + 1; ++v) {
            rgs[pos] = v;
            self(self, pos + 1, std::max(max_used, v));
        }
    };
    rec(rec, 1, 0);
    return out;
}

BigInt count_classes(int n) {
    if (n < 1) throw ValidationError("count_classes requires n >= 1");
    BigInt total = 0;
    for (const auto& l : partitions_of(n)) {
        int k = static_cast<int>(l.size());
        for (const auto& rgs : set_partitions(k)) {
            int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
            std::vector<long> g(blocks, 0), card(blocks, 0);
            for (int i = 0; i < k; ++i) {
                g[rgs[i]] = std::gcd(g[rgs[i]], l[i]);
                ++card[rgs[i]];
            }
            BigInt term = 1;
            for (int c = 0; c < blocks; ++c) {
                BigInt sigma = 0;
                for (long d = 1; d <= g[c]; ++d) {
                    if (g[c] % d != 0) continue;
                    BigInt pw = 1;
                    for (long e = 0; e < card[c] - 1; ++e) pw *= d;
                    sigma += pw;
                }
                term *= sigma;
            }
            total += term;
        }
    }
    return total;
}

ClassEnumeration enumerate_classes_bruteforce(int n) {
    if (n < 1) throw ValidationError("enumeration requires n >= 1");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto parts = set_partitions(n);
    BigInt pairs = BigInt(static_cast<long>(perms.size())) *
                   BigInt(static_cast<long>(parts.size()));
    charge_budget(pairs, "orbit enumeration over (permutation, partition) pairs");

    std::map<std::vector<int>, int> perm_index, part_index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) perm_index[perms[i]] = i;
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) part_index[parts[i]] = i;

    // S_n is generated by the adjacent transposition and the long cycle, so
    // union-find over those two moves identifies the full orbits.
    std::vector<std::vector<int>> gens;
    if (n >= 2) {
        std::vector<int> swap01(n);
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        gens.push_back(swap01);
        std::vector<int> cyc(n);
        for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
        gens.push_back(cyc);
    }

    auto np = static_cast<long>(parts.size());
    std::vector<int> parent(perms.size() * parts.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (size_t pi = 0; pi < perms.size(); ++pi)
        for (size_t qi = 0; qi < parts.size(); ++qi) {
            int id = static_cast<int>(pi * np + qi);
            for (const auto& g : gens) {
                auto [a2, l2] = transport(perms[pi], parts[qi], g);
                int id2 = static_cast<int>(perm_index.at(a2) * np + part_index.at(l2));
                int ra = find_root(parent, id), rb = find_root(parent, id2);
                if (ra != rb) parent[ra] = rb;
            }
        }

    ClassEnumeration out;
    out.count = 0;
    for (size_t pi = 0; pi < perms.size(); ++pi)
        for (size_t qi = 0; qi < parts.size(); ++qi) {
            int id = static_cast<int>(pi * np + qi);
            if (find_root(parent, id) != id) continue;
            out.count += 1;
            out.representatives.push_back(validate_system(perms[pi], parts[qi]));
        }
    return out;
}

long d_max(int n) {
    if (n < 1) throw ValidationError("d_max requires n >= 1");
    long best = n;
    for (const auto& l : partitions_of(n)) {
        std::map<long, long> mult;
        for (long part : l) ++mult[part];
        long worst = 0;
        for (const auto& [sz, cnt] : mult) worst = std::max(worst, sz * cnt);
        best = std::min(best, worst);
    }
    return n - best;
}

}  // namespace micromacro
