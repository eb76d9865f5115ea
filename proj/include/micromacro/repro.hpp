#pragma once

#include <optional>
#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

// Out-degree <= 1 functional graph of reproducible transitions: a -> b when
// the one-step image of block a lies entirely inside block b.
struct ReproGraph {
    std::vector<int> next;  // per label; -1 marks a sink
    std::vector<std::vector<int>> cycles;
    struct Tree {
        int root;                  // sink the tree drains into
        std::vector<int> members;  // includes the root
    };
    std::vector<Tree> trees;
};

// Builds the graph and its cycle/tree decomposition, asserting the expected
// structure: entropy constant on cycles, strictly increasing into merges,
// cycles isolated from the trees.
ReproGraph repro_graph(const System& s);

struct InverseReproReport {
    ReproGraph forward;
    ReproGraph backward;  // graph of the inverse dynamics
};

// Asserts: a backward edge a->b holds iff block a sits inside the image of
// block b; every backward edge has either S(a) < S(b) with b a forward sink,
// or S(a) = S(b) with the forward edge b->a; backward cycles are the
// reversed forward cycles; leaves are exactly the blocks whose preimages all
// lie in forward sinks.
InverseReproReport inverse_repro_check(const System& s);

struct EpsilonReproReport {
    std::vector<std::vector<int>> successors;  // labels b with [alpha]_ab >= 1-eps
    bool sink_free = false;
    bool gap_condition = false;  // |a| < |b| implies |a| < (1-eps)|b|
    // Present when both hypotheses hold; the decreasing ratio, asserted <= eps.
    std::optional<Rational> decreasing_ratio;
};

EpsilonReproReport epsilon_repro(const System& s, const Rational& eps);

struct EquivariantReproReport {
    long matched_pairs = 0;  // label pairs with alpha(a) = b
};

// For an equivariant reversion: asserts that a->b and r(b)->r(a) are both
// reproducible exactly when alpha maps block a onto block b, and that with an
// invariant reversion such a pair closes into the two-cycle a->b->a.
EquivariantReproReport p10_check(const System& s);

}  // namespace micromacro
