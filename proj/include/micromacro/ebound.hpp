#pragma once

#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

// A system re-macroized by the first-hit time of a distinguished set E.
// Labels of sys coincide with reaching times: label l means e(i) = l.
struct ReachingSystem {
    System sys;
    std::vector<int> E;            // sorted
    std::vector<int> e;            // per microstate, equals sys.macro
    int L = 0;
    std::vector<long> level_size;  // |X_k| for k = 0..L
};

// Requires every alpha-cycle of s to meet E; the macro labeling of s is
// ignored, its reversion (if any) is kept. Reaching times are computed by a
// backward sweep from E and cross-checked against the forward definition.
ReachingSystem reaching_system(const System& s, const std::vector<int>& E);

struct EboundStructureReport {
    std::vector<long> level_size;
    std::vector<long> entry_count;  // |[[E, X_k]]| for k = 0..L
    bool onto = false;              // e(alpha E) covers [0, L]
    // Filled when onto: class sizes and the mean arrow of time.
    long d = 0, c = 0, i = 0;
    Rational mean_arrow;
};

// Asserts the level/entry counting identities, the kernel shape (row i >= 1
// is a point mass on i-1), and, when e(alpha E) is onto, the D/C/I counts and
// both closed forms of the mean arrow of time.
EboundStructureReport structure_report(const ReachingSystem& rs);

// True iff every microstate entering E stays in E for at least S steps.
// When true, also asserts that the equilibrium of the reaching system is
// S-stable.
bool s_stability_check(const ReachingSystem& rs, int S);

// Two-sheet extension: microstate (i, s) with s in {+1, -1} is indexed
// i + n * [s = -1]; alpha_hat(i, s) = (alpha^s i, s), r(i, s) = (i, -s).
System double_cover(const System& s, const std::vector<int>& E);

struct DoubleCoverReport {
    ReachingSystem cover;
    bool onto = false;
    long excursions = 0;  // excursions outside E-hat examined
};

// Builds the double cover and asserts: L-hat = L, |X-hat_k| = 2|X_k|, E-hat
// r-invariant, S-stability equivalence for S <= L+1, surjectivity transfer,
// and under surjectivity the D/C/I ratio preservation, mean-arrow equality
// and the excursion midpoint criterion.
DoubleCoverReport double_cover_report(const ReachingSystem& rs);

}  // namespace micromacro
