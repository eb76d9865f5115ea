#pragma once

#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

// Row-stochastic matrix over macro labels, entries exact.
struct MacroKernel {
    int k = 0;
    std::vector<std::vector<Rational>> rows;
};

// [alpha]_{ab} = |a n alpha^-1(b)| / |a|. Also asserts row sums and the
// factorization [alpha] = m* alpha* c on the point-mass basis.
MacroKernel kernel(const System& s);

// Kernel of (X, A, m, alpha^n) - the exact n-step transition table, which is
// NOT the n-th matrix power of kernel(s) in general.
MacroKernel kernel_power(const System& s, long n);

// Eq-(T) kernel of an arbitrary bijection of X against the macro labeling.
MacroKernel kernel_of_bijection(const System& s, const std::vector<int>& map);

MacroKernel matrix_power(const MacroKernel& m, long n);
MacroDistribution apply_kernel(const MacroKernel& m, const MacroDistribution& q);

// Max absolute entry difference between matrix_power(kernel(s), n) and
// kernel_power(s, n): an exact witness of how non-Markovian the macro
// dynamics is at horizon n.
Rational markov_defect(const System& s, long n);

// [c alpha*]_{ij} = 1/|b| if alpha(i), j in b, else 0. Verifies that the
// uniform measure is stationary and the conjugacy m*(c alpha*) = [alpha] m*.
std::vector<std::vector<Rational>> lifted_kernel(const System& s);

struct ChainStructure {
    int class_count = 0;
    std::vector<int> class_of_label;
    std::vector<std::vector<int>> classes;         // labels per class
    std::vector<long> period;                      // per class
    std::vector<int> cyclic_index;                 // per label: position mod period
    std::vector<bool> absorbing;                   // per label
};

// Communication classes computed by Gamma-graph reachability and, as a
// cross-check, by joining the alpha-cycle partition with the macro partition.
ChainStructure chain_structure(const System& s);

struct LimitReport {
    ChainStructure structure;
    // sublimit[c][j] is the limit of [alpha]^(nd+j) q_C as a measure on all
    // labels (zero off class c); d = period of class c.
    std::vector<std::vector<std::vector<Rational>>> sublimit;
    // Number of float iterations needed to match every sub-limit to 1e-12.
    long probe_iterations = 0;
};
LimitReport limit_distribution(const System& s, const MacroDistribution& q);

struct ReverseKernelReport {
    MacroKernel reversed;       // kernel of the inverse system
    bool detailed_balance = false;
};
// Asserts [alpha]^r_{ab} = (p_b/p_a) [alpha]_{ba} and, when a reversion is
// present, |[[a,b]]| = |[[rb,ra]]| for all label pairs.
ReverseKernelReport reverse_kernel(const System& s);

struct MonotonicityReport {
    std::vector<LogValue> markov_trace;  // H+S of [alpha]^t q, matrix powers
    std::vector<LogValue> exact_trace;   // H+S of [alpha^t] q, exact dynamics
    std::vector<bool> step_equality;     // markov step t -> t+1 was an equality
};
// Asserts each markov_trace step is non-decreasing and that equality holds
// exactly when coarse-graining the step changes nothing; also checks the
// lifted inequality H(qt) <= H(c alpha* qt) along the trace.
MonotonicityReport entropy_monotonicity(const System& s, const MacroDistribution& q, int steps);

}  // namespace micromacro
