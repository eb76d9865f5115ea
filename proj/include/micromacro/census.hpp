#pragma once

#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

// Lexicographically least encoding of (alpha, macro partition) over all
// relabelings of the microstates. Equal forms iff isomorphic systems.
struct CanonicalForm {
    std::vector<int> alpha;
    std::vector<int> macro;  // compacted in first-occurrence order
    bool operator==(const CanonicalForm& o) const = default;
    bool operator<(const CanonicalForm& o) const;
};

// Exhaustive over relabelings with cycle-type pruning; practical for n <= 8.
CanonicalForm canonical_form(const System& s);

// True iff a relabeling transports the dynamics and the macro partition.
// Quick rejection by cycle type and block-size multiset, then witness search.
bool is_isomorphic(const System& s1, const System& s2);

BigInt stirling2(int n, int k);

// Systems on a labeled state set: n! k! S(n, k).
BigInt count_labeled(int n, int k);

// Isomorphism classes with n microstates, by the cycle-partition formula:
// sum over cycle-length partitions l of n into k parts and set partitions pi
// of the k cycles, of prod_c sum_{d | gcd(l_i : i in c)} d^(|c|-1).
BigInt count_classes(int n);

struct ClassEnumeration {
    BigInt count;
    std::vector<System> representatives;  // one per orbit
};

// Orbits of the conjugation / direct-image action on (permutation, partition)
// pairs, by union-find over the full pair table. Budgeted; n <= 7.
ClassEnumeration enumerate_classes_bruteforce(int n);

// Largest possible decreasing set: n - min over partitions l of max_k k*l_k,
// where l_k counts the parts of size k.
long d_max(int n);

// Numerical partitions of n in reverse-lexicographic order, each a
// non-increasing list of parts.
std::vector<std::vector<long>> partitions_of(int n);

// Set partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<int>> set_partitions(int n);

}  // namespace micromacro
