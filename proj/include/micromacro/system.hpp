#pragma once

#include <optional>
#include <string>
#include <vector>

#include "micromacro/logvalue.hpp"
#include "micromacro/rational.hpp"

namespace micromacro {

// A finite micro-macro dynamical system: n microstates acted on by a
// permutation, each microstate carrying a macro label. Labels are compacted
// to 0..k-1 in first-occurrence order by validate_system. The optional
// reversion is an involution conjugating the dynamics to its inverse.
struct System {
    int n = 0;
    std::vector<int> alpha;   // image array, a bijection on 0..n-1
    std::vector<int> macro;   // label per microstate, labels 0..k-1
    int k = 0;
    std::vector<long> block_size;  // microstates per label
    std::optional<std::vector<int>> reversion;
    std::optional<std::vector<Rational>> macro_values;   // numeric label values
    std::optional<std::vector<std::string>> macro_names; // display only
};

// A probability distribution on macro labels; entries are exact and sum to 1.
using MacroDistribution = std::vector<Rational>;

System validate_system(std::vector<int> alpha, std::vector<int> macro,
                       std::optional<std::vector<int>> reversion = std::nullopt,
                       std::optional<std::vector<Rational>> values_by_label = std::nullopt,
                       std::optional<std::vector<std::string>> names_by_label = std::nullopt);

void check_distribution(const System& s, const MacroDistribution& q);

MacroDistribution point_mass(const System& s, int label);
MacroDistribution uniform_on_labels(const System& s);
MacroDistribution macro_measure(const System& s);  // p_a = |a| / |X|

LogValue boltzmann_entropy(const System& s, int label);      // ln |a|
LogValue boltzmann_entropy_micro(const System& s, int i);    // ln |m(i)|
LogValue shannon_entropy(const MacroDistribution& q);        // H(q)
LogValue mean_boltzmann(const System& s, const MacroDistribution& q);  // S(q)

// (cq)_i = q_{m(i)} / |m(i)|, a distribution on microstates.
std::vector<Rational> coarse_grain(const System& s, const MacroDistribution& q);
LogValue shannon_entropy_micro(const std::vector<Rational>& dist);

struct EntropyClassReport {
    std::vector<int> decreasing, constant, increasing;  // D, C, I
    Rational d_ratio, c_ratio, i_ratio;
};
EntropyClassReport entropy_classes(const System& s);

struct EquilibriumReport {
    std::vector<int> equilibrium;  // microstates in maximum-entropy macrostates
    Rational ratio;                // |X_eq| / |X|
    Rational eps;                  // 1 - ratio
    bool unique_dominant = false;
    // When a unique dominant macrostate a exists:
    // ln(1-eps) + ln|X| <= S(a) <= ln|X|, all verified exactly.
    LogValue lower_bound, s_dominant, upper_bound;
};
EquilibriumReport equilibrium_report(const System& s);

std::vector<std::vector<int>> alpha_cycles(const System& s);
BigInt order_of_alpha(const System& s);  // lcm of cycle lengths

// Image array of alpha^t (t may be negative).
std::vector<int> alpha_power(const System& s, long t);

// (|D_n|, |I_n|): microstates starting a strictly decreasing (increasing)
// entropy run of length n.
std::pair<long, long> monotone_runs(const System& s, int n);

// Largest A with S(i) < S(alpha i) < ... < S(alpha^A i).
int arrow_of_time(const System& s, int i);

struct ReversionReport {
    bool invariant = false;
    bool equivariant = false;
    bool entropy_preserving = false;
    // Label permutation induced by r, present iff equivariant.
    std::optional<std::vector<int>> descended;
};
ReversionReport reversion_report(const System& s);

System inverse_system(const System& s);

// Compacts an arbitrary label vector to 0..k-1 in first-occurrence order.
std::vector<int> compact_labels(const std::vector<int>& labels, int* count_out = nullptr);

}  // namespace micromacro
