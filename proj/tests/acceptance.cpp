// Acceptance battery: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <vector>

#include "micromacro/build.hpp"
#include "micromacro/census.hpp"
#include "micromacro/ebound.hpp"
#include "micromacro/errors.hpp"
#include "micromacro/ldev.hpp"
#include "micromacro/markov.hpp"
#include "micromacro/process.hpp"
#include "micromacro/produce.hpp"
#include "random_systems.hpp"

using namespace micromacro;

namespace {

System z4_symmetric() {
    return validate_system({1, 2, 3, 0}, {0, 1, 2, 1}, std::vector<int>{0, 3, 2, 1});
}

void require(bool ok, const char* what) {
    if (!ok) throw IdentityError(what);
}

// All (permutation, labeling) systems on n microstates, by callback.
void for_all_systems(int n, const std::function<void(const System&)>& f) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    auto partitions = set_partitions(n);
    do {
        for (const auto& rgs : partitions) f(validate_system(perm, rgs));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

long max_kl(const std::vector<long>& partition) {
    std::map<long, long> mult;
    for (long p : partition) ++mult[p];
    long best = 0;
    for (auto [size, count] : mult) best = std::max(best, size * count);
    return best;
}

void criterion_tableau() {
    std::map<long, long> parts{{1, 1}, {2, 1}, {3, 4}, {4, 1}, {6, 1}};
    require(entropy_classes(max_decreasing_system(parts)).decreasing.size() == 13,
            "tableau |D| != 13");
    // For every block-size partition with n <= 7, the tableau matches the
    // exhaustive maximum of |D| over all systems with those block sizes.
    for (int n = 1; n <= 7; ++n) {
        std::map<std::vector<long>, long> best;
        for_all_systems(n, [&](const System& s) {
            auto sizes = s.block_size;
            std::sort(sizes.rbegin(), sizes.rend());
            long d = static_cast<long>(entropy_classes(s).decreasing.size());
            auto [it, fresh] = best.emplace(sizes, d);
            if (!fresh) it->second = std::max(it->second, d);
        });
        for (const auto& [partition, d] : best) {
            require(d == n - max_kl(partition), "exhaustive max |D| != n - max k*l_k");
            std::map<long, long> parts_map;
            for (long p : partition) ++parts_map[p];
            long tableau_d = static_cast<long>(
                entropy_classes(max_decreasing_system(parts_map)).decreasing.size());
            require(tableau_d == d, "tableau misses the exhaustive maximum");
        }
    }
}

void criterion_census() {
    for (int n = 1; n <= 6; ++n)
        require(count_classes(n) == enumerate_classes_bruteforce(n).count,
                "class formula != orbit count");
    require(count_classes(2) == 4, "count_classes(2) != 4");
    for (int n = 1; n <= 5; ++n) {
        BigInt perms = 1;
        for (int i = 2; i <= n; ++i) perms *= i;
        for (int k = 1; k <= n; ++k) {
            long surjections = 0;
            std::vector<int> f(n, 0);
            while (true) {
                std::vector<bool> hit(k, false);
                for (int x : f) hit[x] = true;
                if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
                    ++surjections;
                int pos = n - 1;
                while (pos >= 0 && f[pos] == k - 1) f[pos--] = 0;
                if (pos < 0) break;
                ++f[pos];
            }
            require(count_labeled(n, k) == perms * surjections,
                    "labeled count != direct enumeration");
        }
    }
}

void criterion_stationarity() {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 200; ++t) {
        System s = testing::random_system(rng, 12);
        auto p = macro_measure(s);
        require(apply_kernel(kernel(s), p) == p, "[alpha]p != p");
    }
}

void criterion_monotonicity() {
    std::mt19937_64 rng(102);
    for (int t = 0; t < 200; ++t) {
        System s = testing::random_system(rng, 10);
        auto q = testing::random_distribution(rng, s.k);
        auto hs = [&](const MacroDistribution& d) {
            return shannon_entropy(d) + mean_boltzmann(s, d);
        };
        auto q1 = apply_kernel(kernel(s), q);
        LogValue gain = hs(q1) - hs(q);
        require(gain.sign() >= 0, "H+S decreased under the kernel");
        // Equality means the pushed micro distribution is already constant on
        // blocks, i.e. it coincides with the coarse grain of its own macro law.
        auto cq = coarse_grain(s, q);
        std::vector<Rational> pushed(s.n);
        for (int i = 0; i < s.n; ++i) pushed[s.alpha[i]] = cq[i];
        require((gain.sign() == 0) == (pushed == coarse_grain(s, q1)),
                "equality holds exactly when the push stays block-constant");
        entropy_monotonicity(s, q, 3);
    }
}

void criterion_fluctuation() {
    System s = z4_symmetric();
    auto u = uniform_on_labels(s);
    auto rep = fluctuation_check(s, u, 1);
    require(rep.density.at(frac(2)) == frac(2, 3), "w(2) != 2/3");
    require(rep.density.at(frac(1, 2)) == frac(1, 3), "w(1/2) != 1/3");
    require(rep.sigma_q == frac(1, 3) * LogValue::log_integer(2),
            "sigma != (1/3) ln 2");
    require(mean_production(s, u, 1) == rep.sigma_q, "mean production mismatch");
    std::mt19937_64 rng(103);
    for (int t = 0; t < 100; ++t) {
        System r = testing::random_reversible_system(rng, 3, 8);
        for (long n = 1; n <= 2; ++n) fluctuation_check(r, uniform_on_labels(r), n);
    }
}

void criterion_remark() {
    for (int n = 3; n <= 6; ++n) {
        System s = remark_system(n);
        int bottom = (*s.macro_names)[0] == "bottom" ? 0 : 1;
        auto q = point_mass(s, bottom);
        auto q1 = apply_kernel(kernel_power(s, 1), q);
        auto q2 = apply_kernel(kernel_power(s, 2), q);
        auto hs = [&](const MacroDistribution& d) {
            return shannon_entropy(d) + mean_boltzmann(s, d);
        };
        LogValue drop = hs(q1) - hs(q2);
        require(drop.sign() > 0, "remark drop not positive");
        BigInt pw = 1;
        for (int e = 0; e < n - 1; ++e) pw *= n - 1;
        LogValue expected =
            frac(1, n) * LogValue::log_rational(frac(pw, BigInt(n)));
        require(drop == expected, "remark drop closed form failed");
        if (n == 3) {
            require(shannon_entropy(q1).is_zero(), "H([alpha]q) != 0");
            require(mean_boltzmann(s, q1) == frac(2) * LogValue::log_integer(3),
                    "S([alpha]q) != 2 ln 3");
        }
    }
}

void criterion_coarse_grain() {
    std::mt19937_64 rng(104);
    for (int t = 0; t < 500; ++t) {
        System s = testing::random_system(rng, 10);
        auto q = testing::random_distribution(rng, s.k);
        require(shannon_entropy_micro(coarse_grain(s, q)) ==
                    shannon_entropy(q) + mean_boltzmann(s, q),
                "H(cq) != H(q) + S(q)");
        auto p = macro_measure(s);
        require(shannon_entropy(p) + mean_boltzmann(s, p) == LogValue::log_integer(s.n),
                "H(p) + S(p) != ln n");
    }
}

void criterion_ebound() {
    System s = validate_system({1, 2, 3, 4, 5, 6, 7, 0}, std::vector<int>(8, 0));
    auto rs = reaching_system(s, {0, 1, 4, 6});
    require(rs.e == std::vector<int>{0, 0, 2, 1, 0, 1, 0, 1}, "reaching times differ");
    require(rs.L == 2, "L != 2");
    auto rep = structure_report(rs);
    require(rep.entry_count == std::vector<long>{1, 2, 1}, "entry counts differ");
    require(rep.mean_arrow == frac(5, 8), "<A> != 5/8");
    require(rep.d == 3, "|D| != 3");
    auto cover = double_cover_report(rs);
    for (int k = 0; k <= rs.L; ++k)
        require(cover.cover.level_size[k] == 2 * rs.level_size[k], "levels not doubled");
    require(cover.cover.L == 2, "covered L != 2");
    auto cov_rep = structure_report(cover.cover);
    require(cov_rep.mean_arrow == rep.mean_arrow, "<A> changed under the double cover");
    require(frac(cov_rep.d, 16) == frac(rep.d, 8) &&
                frac(cov_rep.c, 16) == frac(rep.c, 8) &&
                frac(cov_rep.i, 16) == frac(rep.i, 8),
            "D/C/I ratios changed under the double cover");
}

void criterion_markovianity() {
    System s = z4_symmetric();
    require(conditional(s, {0, 1}, 2) == 1, "conditioned probability != 1");
    require(conditional(s, {1}, 2) == frac(1, 2), "one-step probability != 1/2");
    for (int n = 1; n <= 5; ++n)
        for_all_systems(n, [](const System& sys) {
            auto rep = markovianity_check(sys, 2);
            require(rep.markov == rep.equivariant, "markov verdict != equivariance");
        });
    std::mt19937_64 rng(105);
    for (int t = 0; t < 50; ++t) {
        System sys = testing::random_system(rng, 8);
        require(stationarity_check(sys, macro_measure(sys), 3).stationary,
                "stationary start drifted");
    }
}

void criterion_sanov() {
    LogValue eps = LogValue::constant(frac(1, 10));
    std::vector<System> bases{z4_symmetric(), validate_system({1, 2, 0}, {0, 0, 1}),
                              validate_system({1, 0}, {0, 1}),
                              validate_system({1, 2, 3, 0}, {0, 0, 1, 1})};
    for (const auto& base : bases)
        for (int N = 1; N <= 5; ++N)
            for (int k = 1; k <= 3; ++k) exact_sanov_identity(base, N, eps, k);
}

void criterion_chain() {
    for (int n = 1; n <= 5; ++n)
        for_all_systems(n, [](const System& sys) { chain_structure(sys); });
    System s = validate_system({1, 2, 0}, {0, 0, 1});
    auto rep = limit_distribution(s, point_mass(s, 0));
    require(rep.sublimit[0][0] == MacroDistribution{frac(2, 3), frac(1, 3)},
            "limit != (2/3, 1/3)");
    require(rep.probe_iterations > 0, "float probe did not run");
}

void criterion_reversal() {
    std::mt19937_64 rng(106);
    for (int t = 0; t < 100; ++t) {
        System s = testing::random_reversible_system(rng, 3, 8);
        require(reversion_report(s).entropy_preserving, "generator lost entropy preservation");
        for (int n = 1; n <= 4; ++n) {
            auto [d, i] = monotone_runs(s, n);
            require(d == i, "|D_n| != |I_n|");
        }
        reverse_process_check(s, 3);
    }
}

struct Criterion {
    const char* name;
    void (*run)();
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"tableau decreasing set", criterion_tableau},
        {"census counts", criterion_census},
        {"kernel stationarity", criterion_stationarity},
        {"entropy monotonicity", criterion_monotonicity},
        {"fluctuation symmetry", criterion_fluctuation},
        {"two-step entropy drop", criterion_remark},
        {"coarse-grain identity", criterion_coarse_grain},
        {"reaching-time structure", criterion_ebound},
        {"non-markovian witness", criterion_markovianity},
        {"exact level masses", criterion_sanov},
        {"chain structure and limits", criterion_chain},
        {"time reversal symmetry", criterion_reversal},
    };
    int failures = 0;
    for (size_t c = 0; c < criteria.size(); ++c) {
        try {
            criteria[c].run();
            std::cout << "criterion " << c + 1 << " (" << criteria[c].name << "): PASS\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "criterion " << c + 1 << " (" << criteria[c].name
                      << "): FAIL: " << e.what() << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
