#pragma once

#include <map>
#include <vector>

#include "micromacro/system.hpp"

namespace micromacro {

enum class CombineKind { DisjointUnion, Product, Reunion, ExtensiveJoint };

// DisjointUnion: side-by-side copies with disjoint label sets.
// Product: pairs of microstates, pairs of labels, componentwise dynamics.
// Reunion: disjoint union of microstates over a shared label universe; the
//   universe is matched by macro names when both systems carry them, by label
//   index when neither does, and is rejected otherwise.
// ExtensiveJoint: product dynamics labeled by the sum of the numeric label
//   values (both inputs must carry macro_values).
System combine(CombineKind kind, const System& s1, const System& s2);

// Composes the labeling with relabel (one entry per label of s).
System coarsen(const System& s, const std::vector<int>& relabel);

// First-return dynamics on the nonempty subset U, labels restricted.
System restrict_to(const System& s, const std::vector<int>& U);

// Labels become the length-l observation words (m i, m alpha i, ...).
System iterate_labels(const System& s, int l);

// Labels become block sizes; macro_values carry the size.
System zones(const System& s);

// Level of the empirical distribution counts/N against ref: the least
// l in 1..k-1 with divergence below l*eps, else k.
int kl_level(const std::vector<long>& counts, long N, const std::vector<Rational>& ref,
             const LogValue& eps, int k);

// N-fold product states labeled by the KL level of the empirical label
// distribution against p. Levels l = 1..k-1 are (l-1)eps <= D < l*eps, level
// k is unbounded above. Each label's level is kept in macro_values.
System empirical_system(const System& base, int N, const LogValue& eps, int k);

// Right-multiplication dynamics on (X x V)^N for a set V of group elements
// acting by the given permutations; inverse_of pairs each element with its
// inverse. Labels by KL level of the empirical distribution on X x V (full)
// or on X alone (first_coordinate = true), against the uniform reference.
System group_action_system(const std::vector<std::vector<int>>& action,
                           const std::vector<int>& inverse_of, int N,
                           bool first_coordinate, const LogValue& eps, int k);

// The translation action of Z_2d on itself with V = nonzero elements,
// labeled through the two-valued halving map and KL levels on binary
// empirical distributions.
System z2d_system(int d, int N, const LogValue& eps, int k);

// Tableau construction realizing the maximum decreasing set n - max_k(k*l_k)
// for a numerical partition given as {part size -> multiplicity}. The
// dynamics is the cyclic successor in column-major reading order.
System max_decreasing_system(const std::map<long, long>& parts);

// Single (n^2+n)-cycle alternating n times through a block of size n before
// running along a block of size n^2.
System remark_system(int n);

// Re-exported from the reaching-time module for discoverability.
System double_cover(const System& s, const std::vector<int>& E);

}  // namespace micromacro
