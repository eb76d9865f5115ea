#pragma once

#include <random>
#include <vector>

#include "micromacro/system.hpp"

namespace micromacro::testing {

// All randomness is mt19937_64 with fixed seeds, so runs are reproducible on
// any platform.
inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(p[i], p[static_cast<int>(draw(rng, static_cast<std::size_t>(i) + 1))]);
    return p;
}

inline System random_system(std::mt19937_64& rng, int max_n) {
    int n = 1 + static_cast<int>(draw(rng, static_cast<std::size_t>(max_n)));
    int k = 1 + static_cast<int>(draw(rng, static_cast<std::size_t>(n)));
    std::vector<int> macro(n);
    for (int i = 0; i < n; ++i) macro[i] = static_cast<int>(draw(rng, k));
    return validate_system(random_permutation(rng, n), std::move(macro));
}

// Disjoint union of cycles Z_m with the reflection r(j) = -j mod m and labels
// chosen per reflection orbit {j, m-j}, so the reversion preserves entropy.
inline System random_reversible_system(std::mt19937_64& rng, int max_cycles,
                                       int max_cycle_len) {
    int cycles = 1 + static_cast<int>(draw(rng, max_cycles));
    std::vector<int> alpha, rev, macro;
    int labels = 0;
    for (int c = 0; c < cycles; ++c) {
        int m = 1 + static_cast<int>(draw(rng, max_cycle_len));
        int base = static_cast<int>(alpha.size());
        int pool = 1 + static_cast<int>(draw(rng, m));
        std::vector<int> pair_label(m / 2 + 1);
        for (auto& l : pair_label) l = labels + static_cast<int>(draw(rng, pool));
        for (int j = 0; j < m; ++j) {
            alpha.push_back(base + (j + 1) % m);
            rev.push_back(base + (m - j) % m);
            macro.push_back(pair_label[std::min(j, m - j)]);
        }
        labels += pool;
    }
    return validate_system(std::move(alpha), std::move(macro), std::move(rev));
}

inline MacroDistribution random_distribution(std::mt19937_64& rng, int k) {
    std::vector<long> w(k);
    long total = 0;
    for (auto& x : w) {
        x = static_cast<long>(draw(rng, 10));
        total += x;
    }
    if (total == 0) {
        w[static_cast<int>(draw(rng, k))] = 1;
        total = 1;
    }
    MacroDistribution q(k);
    for (int a = 0; a < k; ++a) q[a] = frac(w[a], total);
    return q;
}

}  // namespace micromacro::testing
