#pragma once

#include <optional>
#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

// |{i in a0 : alpha^t(i) in a_t for 0 <= t <= n}|.
long path_count(const System& s, const std::vector<int>& labels);

// q_{a0} * path_count / |a0|.
Rational cylinder_prob(const System& s, const MacroDistribution& q,
                       const std::vector<int>& labels);

// Distribution of the label after n steps started from q. Computed from the
// n-th power of alpha and cross-checked against the micro pushforward.
MacroDistribution marginal(const System& s, const MacroDistribution& q, long n);

// Pr[next = next_label | labels], counting ratio. Throws on a null history.
Rational conditional(const System& s, const std::vector<int>& labels, int next_label);

struct MarkovWitness {
    std::vector<int> history;  // realized label path a0..at
    int next = 0;
    Rational conditioned;      // Pr[next | whole history]
    Rational one_step;         // Pr[next | last label] under stationary start
};

struct MarkovianityReport {
    bool markov = false;       // equals "alpha is equivariant"
    bool equivariant = false;
    std::optional<MarkovWitness> witness;  // present iff non-Markov
};

// The macro process is Markov iff one-step images of blocks are blocks. For a
// non-equivariant system a violating history always exists at depth at most
// order(alpha)+1; the search extends that far even if depth is smaller.
MarkovianityReport markovianity_check(const System& s, int depth);

struct StationarityReport {
    bool stationary = false;
    // Present iff not stationary: a tuple and shift whose probabilities differ.
    std::optional<std::vector<int>> witness_tuple;
    long witness_shift = 0;
};

// Compares Pr[X_k = a0, ..., X_{k+m} = a_m] across shifts k <= depth for all
// tuple lengths m < depth. Exhaustive: unrealized tuples have probability 0
// at every shift.
StationarityReport stationarity_check(const System& s, const MacroDistribution& q, int depth);

struct ReverseProcessReport {
    bool reversible = false;  // |[[a0..an]]| = |[[an..a0]]| for all tuples
};

// Asserts the reversion identity: the count of [[a0,...,an]] equals the count
// of microstates tracing r(an),...,r(a0), for every realized tuple up to
// depth+1 labels. With an invariant reversion this forces reversibility,
// which is then also asserted.
ReverseProcessReport reverse_process_check(const System& s, int depth);

}  // namespace micromacro
