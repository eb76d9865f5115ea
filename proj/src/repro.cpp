#include "micromacro/repro.hpp"

#include <algorithm>

#include "micromacro/errors.hpp"
#include "micromacro/markov.hpp"

namespace micromacro {

namespace {

// next[a] = b when all of block a maps into block b, else -1.
std::vector<int> repro_edges(const System& s) {
    std::vector<int> next(s.k, -2);
    for (int i = 0; i < s.n; ++i) {
        int a = s.macro[i], b = s.macro[s.alpha[i]];
        if (next[a] == -2)
            next[a] = b;
        else if (next[a] != b)
            next[a] = -1;
    }
    return next;
}

}  // namespace

ReproGraph repro_graph(const System& s) {
    ReproGraph g;
    g.next = repro_edges(s);

    std::vector<int> in_degree(s.k, 0);
    for (int a = 0; a < s.k; ++a) {
        if (g.next[a] == -1) continue;
        ++in_degree[g.next[a]];
        if (s.block_size[a] > s.block_size[g.next[a]])
            throw IdentityError("reproducible transition decreased entropy");
    }
    for (int b = 0; b < s.k; ++b) {
        if (in_degree[b] < 2) continue;
        for (int a = 0; a < s.k; ++a)
            if (g.next[a] == b && s.block_size[a] >= s.block_size[b])
                throw IdentityError("merge into a block of no larger entropy");
    }

    // Walk the functional graph: each label ends on a cycle or in a sink.
    std::vector<int> state(s.k, 0);  // 0 unseen, 1 in progress, 2 done
    std::vector<int> cycle_of(s.k, -1);
    for (int start = 0; start < s.k; ++start) {
        if (state[start]) continue;
        std::vector<int> path;
        int a = start;
        while (a != -1 && state[a] == 0) {
            state[a] = 1;
            path.push_back(a);
            a = g.next[a];
        }
        if (a != -1 && state[a] == 1) {
            std::vector<int> cycle;
            auto it = std::find(path.begin(), path.end(), a);
            cycle.assign(it, path.end());
            for (int v : cycle) cycle_of[v] = static_cast<int>(g.cycles.size());
            g.cycles.push_back(std::move(cycle));
        }
        for (int v : path) state[v] = 2;
    }
    for (const auto& cycle : g.cycles) {
        for (int v : cycle) {
            if (s.block_size[v] != s.block_size[cycle.front()])
                throw IdentityError("entropy not constant on a reproducible cycle");
            if (in_degree[v] != 1)
                throw IdentityError("reproducible cycle has an external entrance");
        }
    }

    std::vector<int> tree_of(s.k, -1);
    for (int a = 0; a < s.k; ++a) {
        if (cycle_of[a] != -1 || tree_of[a] != -1) continue;
        std::vector<int> path{a};
        int v = a;
        while (g.next[v] != -1 && tree_of[g.next[v]] == -1) {
            v = g.next[v];
            path.push_back(v);
        }
        int tree;
        if (g.next[v] == -1) {
            tree = static_cast<int>(g.trees.size());
            g.trees.push_back({v, {}});
        } else {
            tree = tree_of[g.next[v]];
        }
        for (int u : path) {
            tree_of[u] = tree;
            g.trees[tree].members.push_back(u);
        }
    }
    for (auto& tree : g.trees) std::sort(tree.members.begin(), tree.members.end());
    return g;
}

InverseReproReport inverse_repro_check(const System& s) {
    InverseReproReport rep;
    rep.forward = repro_graph(s);
    rep.backward = repro_graph(inverse_system(s));

    // Backward edge a -> b iff block a is contained in the image of block b.
    std::vector<int> alpha_inv(s.n);
    for (int i = 0; i < s.n; ++i) alpha_inv[s.alpha[i]] = i;
    for (int a = 0; a < s.k; ++a)
        for (int b = 0; b < s.k; ++b) {
            bool inside = true;
            for (int i = 0; i < s.n && inside; ++i)
                if (s.macro[i] == a) inside = s.macro[alpha_inv[i]] == b;
            if (inside != (rep.backward.next[a] == b))
                throw IdentityError("backward edge mismatches the image inclusion");
        }

    std::vector<bool> is_sink(s.k), has_in(s.k, false), cyclic(s.k, false);
    for (int a = 0; a < s.k; ++a) is_sink[a] = rep.forward.next[a] == -1;
    for (int a = 0; a < s.k; ++a)
        if (rep.forward.next[a] != -1) has_in[rep.forward.next[a]] = true;
    for (const auto& cycle : rep.forward.cycles)
        for (int v : cycle) cyclic[v] = true;

    for (int a = 0; a < s.k; ++a) {
        int b = rep.backward.next[a];
        if (b == -1) continue;
        if (s.block_size[a] < s.block_size[b]) {
            if (!is_sink[b]) throw IdentityError("strict backward edge into a non-sink");
        } else if (s.block_size[a] == s.block_size[b]) {
            if (rep.forward.next[b] != a)
                throw IdentityError("flat backward edge is not a reversed forward edge");
        } else {
            throw IdentityError("backward edge decreased entropy");
        }
    }

    auto sorted_cycles = [](const ReproGraph& g) {
        std::vector<std::vector<int>> out;
        for (auto cycle : g.cycles) {
            auto mn = std::min_element(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), mn, cycle.end());
            out.push_back(std::move(cycle));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto fwd = sorted_cycles(rep.forward);
    auto bwd = sorted_cycles(rep.backward);
    for (auto& cycle : bwd) {
        std::reverse(cycle.begin() + 1, cycle.end());
        auto mn = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), mn, cycle.end());
    }
    std::sort(bwd.begin(), bwd.end());
    if (fwd != bwd) throw IdentityError("backward cycles are not reversed forward cycles");

    // Leaf characterization: non-cyclic with no forward in-edge iff every
    // preimage of the block lies in a forward sink.
    for (int v = 0; v < s.k; ++v) {
        bool leaf = !cyclic[v] && !has_in[v];
        bool preimages_rooted = true;
        for (int i = 0; i < s.n && preimages_rooted; ++i)
            if (s.macro[i] == v) preimages_rooted = is_sink[s.macro[alpha_inv[i]]];
        if (leaf != preimages_rooted)
            throw IdentityError("leaf characterization by rooted preimages failed");
    }
    return rep;
}

EpsilonReproReport epsilon_repro(const System& s, const Rational& eps) {
    if (eps <= 0 || eps >= frac(1, 2))
        throw ValidationError("epsilon must satisfy 0 < eps < 1/2");
    EpsilonReproReport rep;
    MacroKernel m = kernel(s);
    Rational threshold = 1 - eps;
    rep.successors.resize(s.k);
    rep.sink_free = true;
    for (int a = 0; a < s.k; ++a) {
        for (int b = 0; b < s.k; ++b)
            if (m.rows[a][b] >= threshold) rep.successors[a].push_back(b);
        if (rep.successors[a].empty()) rep.sink_free = false;
    }
    rep.gap_condition = true;
    for (int a = 0; a < s.k && rep.gap_condition; ++a)
        for (int b = 0; b < s.k; ++b)
            if (s.block_size[a] < s.block_size[b] &&
                !(frac(s.block_size[a]) < threshold * s.block_size[b])) {
                rep.gap_condition = false;
                break;
            }
    if (rep.sink_free && rep.gap_condition) {
        Rational ratio = frac(static_cast<long>(entropy_classes(s).decreasing.size()), s.n);
        if (ratio > eps)
            throw IdentityError("decreasing ratio exceeded epsilon despite sink-free gapped blocks");
        rep.decreasing_ratio = ratio;
    }
    return rep;
}

EquivariantReproReport p10_check(const System& s) {
    ReversionReport rr = reversion_report(s);
    if (!rr.equivariant)
        throw ValidationError("NotEquivariant: reversion does not descend to labels");
    const auto& r_label = *rr.descended;
    auto next = repro_edges(s);
    EquivariantReproReport rep;
    for (int a = 0; a < s.k; ++a)
        for (int b = 0; b < s.k; ++b) {
            bool both = next[a] == b && next[r_label[b]] == r_label[a];
            bool onto = next[a] == b && s.block_size[a] == s.block_size[b];
            if (both != onto)
                throw IdentityError("reproducible pair criterion failed");
            if (onto) {
                ++rep.matched_pairs;
                if (rr.invariant && next[b] != a)
                    throw IdentityError("invariant reversion did not close the two-cycle");
            }
        }
    return rep;
}

}  // namespace micromacro
