#include "micromacro/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>

#include "micromacro/budget.hpp"
#include "micromacro/errors.hpp"

namespace micromacro {

namespace {

void check_row_stochastic(const MacroKernel& m) {
    for (const auto& row : m.rows) {
        Rational sum = 0;
        for (const auto& x : row) {
            if (x < 0) throw IdentityError("kernel entry is negative");
            sum += x;
        }
        if (sum != 1) throw IdentityError("kernel row does not sum to 1");
    }
}

MacroKernel identity_kernel(int k) {
    MacroKernel m;
    m.k = k;
    m.rows.assign(k, std::vector<Rational>(k, frac(0)));
    for (int a = 0; a < k; ++a) m.rows[a][a] = 1;
    return m;
}

MacroKernel multiply(const MacroKernel& x, const MacroKernel& y) {
    MacroKernel out;
    out.k = x.k;
    out.rows.assign(x.k, std::vector<Rational>(x.k, frac(0)));
    for (int a = 0; a < x.k; ++a)
        for (int c = 0; c < x.k; ++c) {
            if (x.rows[a][c] == 0) continue;
            for (int b = 0; b < x.k; ++b)
                if (y.rows[c][b] != 0) out.rows[a][b] += x.rows[a][c] * y.rows[c][b];
        }
    return out;
}

}  // namespace

MacroKernel kernel_of_bijection(const System& s, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != s.n)
        throw ValidationError("kernel_of_bijection: map has wrong length");
    MacroKernel m;
    m.k = s.k;
    m.rows.assign(s.k, std::vector<Rational>(s.k, frac(0)));
    for (int i = 0; i < s.n; ++i)
        m.rows[s.macro[i]][s.macro[map[i]]] += frac(1, s.block_size[s.macro[i]]);
    check_row_stochastic(m);
    return m;
}

MacroKernel kernel(const System& s) {
    MacroKernel m = kernel_of_bijection(s, s.alpha);
    // Factorization through micro space, checked on every point mass.
    for (int a = 0; a < s.k; ++a) {
        std::vector<Rational> pushed(s.n, frac(0));
        auto cq = coarse_grain(s, point_mass(s, a));
        for (int i = 0; i < s.n; ++i) pushed[s.alpha[i]] = cq[i];
        std::vector<Rational> row(s.k, frac(0));
        for (int i = 0; i < s.n; ++i) row[s.macro[i]] += pushed[i];
        if (row != m.rows[a])
            throw IdentityError("kernel does not factor through the micro dynamics");
    }
    return m;
}

MacroKernel kernel_power(const System& s, long n) {
    return kernel_of_bijection(s, alpha_power(s, n));
}

MacroKernel matrix_power(const MacroKernel& m, long n) {
    if (n < 0) throw ValidationError("matrix_power: negative exponent");
    MacroKernel acc = identity_kernel(m.k);
    MacroKernel base = m;
    for (long e = n; e > 0; e >>= 1) {
        if (e & 1) acc = multiply(acc, base);
        if (e > 1) base = multiply(base, base);
    }
    return acc;
}

MacroDistribution apply_kernel(const MacroKernel& m, const MacroDistribution& q) {
    if (static_cast<int>(q.size()) != m.k)
        throw ValidationError("apply_kernel: dimension mismatch");
    MacroDistribution out(m.k, frac(0));
    for (int a = 0; a < m.k; ++a) {
        if (q[a] == 0) continue;
        for (int b = 0; b < m.k; ++b)
            if (m.rows[a][b] != 0) out[b] += q[a] * m.rows[a][b];
    }
    return out;
}

Rational markov_defect(const System& s, long n) {
    MacroKernel exact = kernel_power(s, n);
    MacroKernel chained = matrix_power(kernel(s), n);
    Rational worst = 0;
    for (int a = 0; a < s.k; ++a)
        for (int b = 0; b < s.k; ++b) {
            Rational d = abs(exact.rows[a][b] - chained.rows[a][b]);
            if (d > worst) worst = d;
        }
    return worst;
}

std::vector<std::vector<Rational>> lifted_kernel(const System& s) {
    charge_budget(BigInt(s.n) * s.n, "lifted kernel");
    std::vector<std::vector<Rational>> m(s.n, std::vector<Rational>(s.n, frac(0)));
    for (int i = 0; i < s.n; ++i) {
        int b = s.macro[s.alpha[i]];
        for (int j = 0; j < s.n; ++j)
            if (s.macro[j] == b) m[i][j] = frac(1, s.block_size[b]);
    }
    // Uniform measure is stationary: every column must sum to 1.
    for (int j = 0; j < s.n; ++j) {
        Rational col = 0;
        for (int i = 0; i < s.n; ++i) col += m[i][j];
        if (col != 1) throw IdentityError("uniform measure is not stationary for the lifted kernel");
    }
    return m;
}

ChainStructure chain_structure(const System& s) {
    // Graph on microstates plus one virtual node per block. Edges:
    //   i -> alpha(i)        weight 1
    //   i -> block(m(i))     weight 0
    //   block(a) -> i in a   weight 0
    // Paths then carry exactly the number of alpha steps taken, so closed
    // walks measure alpha steps and block nodes are free to traverse.
    int n = s.n, k = s.k;
    int total = n + k;
    struct Edge {
        int to;
        int w;
    };
    std::vector<std::vector<Edge>> adj(total), radj(total);
    auto add_edge = [&](int u, int v, int w) {
        adj[u].push_back({v, w});
        radj[v].push_back({u, w});
    };
    for (int i = 0; i < n; ++i) {
        add_edge(i, s.alpha[i], 1);
        add_edge(i, n + s.macro[i], 0);
        add_edge(n + s.macro[i], i, 0);
    }

    // Kosaraju, iterative.
    std::vector<int> order;
    order.reserve(total);
    {
        std::vector<char> seen(total, 0);
        std::vector<std::pair<int, size_t>> stack;
        for (int start = 0; start < total; ++start) {
            if (seen[start]) continue;
            seen[start] = 1;
            stack.emplace_back(start, 0);
            while (!stack.empty()) {
                auto& [u, idx] = stack.back();
                if (idx < adj[u].size()) {
                    int v = adj[u][idx++].to;
                    if (!seen[v]) {
                        seen[v] = 1;
                        stack.emplace_back(v, 0);
                    }
                } else {
                    order.push_back(u);
                    stack.pop_back();
                }
            }
        }
    }
    std::vector<int> comp(total, -1);
    int comp_count = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != -1) continue;
        std::vector<int> stack{*it};
        comp[*it] = comp_count;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& e : radj[u])
                if (comp[e.to] == -1) {
                    comp[e.to] = comp_count;
                    stack.push_back(e.to);
                }
        }
        ++comp_count;
    }

    ChainStructure cs;
    cs.class_of_label.assign(k, -1);
    {
        std::vector<int> renum(comp_count, -1);
        for (int a = 0; a < k; ++a) {
            int c = comp[n + a];
            if (renum[c] == -1) renum[c] = cs.class_count++;
            cs.class_of_label[a] = renum[c];
        }
        // Every microstate must share its block's component.
        for (int i = 0; i < n; ++i)
            if (comp[i] != comp[n + s.macro[i]])
                throw IdentityError("microstate separated from its block in the chain graph");
    }
    cs.classes.assign(cs.class_count, {});
    for (int a = 0; a < k; ++a) cs.classes[cs.class_of_label[a]].push_back(a);

    // Cross-check: join the alpha-cycle partition with the macro partition.
    {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
        for (int i = 0; i < n; ++i) unite(i, s.alpha[i]);
        std::vector<int> first_in_block(k, -1);
        for (int i = 0; i < n; ++i) {
            int a = s.macro[i];
            if (first_in_block[a] == -1)
                first_in_block[a] = i;
            else
                unite(i, first_in_block[a]);
        }
        std::map<int, int> root_class;
        for (int a = 0; a < k; ++a) {
            int root = find(first_in_block[a]);
            auto [it, fresh] = root_class.emplace(root, cs.class_of_label[a]);
            if (!fresh && it->second != cs.class_of_label[a])
                throw IdentityError("communication class routes disagree");
        }
        if (static_cast<int>(root_class.size()) != cs.class_count)
            throw IdentityError("communication class routes disagree on the class count");
    }

    // Period of a class: gcd of alpha-step counts over closed walks, computed
    // from potential discrepancies along non-tree edges.
    cs.period.assign(cs.class_count, 0);
    cs.cyclic_index.assign(k, 0);
    std::vector<long> dist(total, -1);
    std::vector<char> done(comp_count, 0);
    for (int a = 0; a < k; ++a) {
        int c = comp[n + a];
        if (done[c]) continue;
        done[c] = 1;
        std::vector<int> nodes;
        std::vector<int> bfs{n + a};
        dist[n + a] = 0;
        while (!bfs.empty()) {
            int u = bfs.back();
            bfs.pop_back();
            nodes.push_back(u);
            for (const auto& e : adj[u])
                if (comp[e.to] == c && dist[e.to] == -1) {
                    dist[e.to] = dist[u] + e.w;
                    bfs.push_back(e.to);
                }
        }
        long g = 0;
        for (int u : nodes)
            for (const auto& e : adj[u])
                if (comp[e.to] == c)
                    g = std::gcd(g, std::labs(dist[u] + e.w - dist[e.to]));
        if (g == 0) throw IdentityError("communication class has no closed walk");
        int cls = cs.class_of_label[a];
        cs.period[cls] = g;
        for (int b = 0; b < k; ++b)
            if (comp[n + b] == c) cs.cyclic_index[b] = static_cast<int>(((dist[n + b] % g) + g) % g);
    }

    cs.absorbing.assign(k, true);
    for (int i = 0; i < n; ++i)
        if (s.macro[s.alpha[i]] != s.macro[i]) cs.absorbing[s.macro[i]] = false;

    // The period always divides the order of alpha restricted to the class.
    BigInt alpha_order = order_of_alpha(s);
    for (int c = 0; c < cs.class_count; ++c)
        if (alpha_order % cs.period[c] != 0)
            throw IdentityError("class period does not divide the order of alpha");
    return cs;
}

LimitReport limit_distribution(const System& s, const MacroDistribution& q) {
    check_distribution(s, q);
    LimitReport rep;
    rep.structure = chain_structure(s);
    const ChainStructure& cs = rep.structure;

    rep.sublimit.resize(cs.class_count);
    for (int c = 0; c < cs.class_count; ++c) {
        long d = cs.period[c];
        std::vector<Rational> residue_mass(d, frac(0));
        std::vector<long> residue_size(d, 0);
        for (int a : cs.classes[c]) {
            residue_mass[cs.cyclic_index[a]] += q[a];
            residue_size[cs.cyclic_index[a]] += s.block_size[a];
        }
        rep.sublimit[c].assign(d, std::vector<Rational>(s.k, frac(0)));
        for (long j = 0; j < d; ++j)
            for (int a : cs.classes[c]) {
                long src = ((cs.cyclic_index[a] - j) % d + d) % d;
                rep.sublimit[c][j][a] =
                    residue_mass[src] * frac(s.block_size[a], residue_size[cs.cyclic_index[a]]);
            }
    }

    // Float probe: iterate the kernel in doubles until the trajectory matches
    // the closed-form limits to 1e-12. The closed form is the answer; the
    // iteration only demonstrates convergence.
    MacroKernel m = kernel(s);
    std::vector<std::vector<double>> mf(s.k, std::vector<double>(s.k));
    for (int a = 0; a < s.k; ++a)
        for (int b = 0; b < s.k; ++b) mf[a][b] = to_double(m.rows[a][b]);
    std::vector<double> v(s.k);
    for (int a = 0; a < s.k; ++a) v[a] = to_double(q[a]);
    const long cap = 100000;
    long t = 0;
    for (; t <= cap; ++t) {
        double worst = 0;
        for (int a = 0; a < s.k; ++a) {
            int c = cs.class_of_label[a];
            long j = t % cs.period[c];
            worst = std::max(worst, std::abs(v[a] - to_double(rep.sublimit[c][j][a])));
        }
        if (worst < 1e-12) break;
        std::vector<double> next(s.k, 0.0);
        for (int a = 0; a < s.k; ++a)
            for (int b = 0; b < s.k; ++b) next[b] += v[a] * mf[a][b];
        v = std::move(next);
    }
    if (t > cap) throw IdentityError("kernel iteration did not reach the closed-form limit");
    rep.probe_iterations = t;
    return rep;
}

ReverseKernelReport reverse_kernel(const System& s) {
    ReverseKernelReport rep;
    MacroKernel fwd = kernel(s);
    rep.reversed = kernel(inverse_system(s));
    MacroDistribution p = macro_measure(s);
    for (int a = 0; a < s.k; ++a)
        for (int b = 0; b < s.k; ++b)
            if (rep.reversed.rows[a][b] * p[a] != fwd.rows[b][a] * p[b])
                throw IdentityError("reverse kernel is not the p-adjoint of the kernel");
    rep.detailed_balance = true;
    for (int a = 0; a < s.k && rep.detailed_balance; ++a)
        for (int b = 0; b < s.k; ++b)
            if (p[a] * fwd.rows[a][b] != p[b] * fwd.rows[b][a]) {
                rep.detailed_balance = false;
                break;
            }
    if (s.reversion) {
        // |{i in a : alpha(i) in b}| must equal |{i in r(b) : alpha(i) in r(a)}|.
        const auto& r = *s.reversion;
        std::vector<std::vector<long>> cnt(s.k, std::vector<long>(s.k, 0)),
            rcnt(s.k, std::vector<long>(s.k, 0));
        for (int i = 0; i < s.n; ++i) {
            cnt[s.macro[i]][s.macro[s.alpha[i]]]++;
            rcnt[s.macro[r[i]]][s.macro[r[s.alpha[i]]]]++;
        }
        for (int a = 0; a < s.k; ++a)
            for (int b = 0; b < s.k; ++b)
                if (cnt[a][b] != rcnt[b][a])
                    throw IdentityError("reversion does not transpose the transition counts");
    }
    return rep;
}

MonotonicityReport entropy_monotonicity(const System& s, const MacroDistribution& q, int steps) {
    if (steps < 0) throw ValidationError("entropy_monotonicity: negative step count");
    MonotonicityReport rep;
    MacroKernel m = kernel(s);
    auto lifted = lifted_kernel(s);
    MacroDistribution cur = q;
    check_distribution(s, cur);
    for (int t = 0; t <= steps; ++t) {
        rep.markov_trace.push_back(shannon_entropy(cur) + mean_boltzmann(s, cur));
        rep.exact_trace.push_back([&] {
            MacroDistribution qt = apply_kernel(kernel_power(s, t), q);
            return shannon_entropy(qt) + mean_boltzmann(s, qt);
        }());
        if (t == steps) break;

        // Lifted check: coarse distributions cannot lose micro entropy in one
        // kernel step.
        auto cq = coarse_grain(s, cur);
        std::vector<Rational> moved(s.n, frac(0));
        for (int i = 0; i < s.n; ++i) {
            if (cq[i] == 0) continue;
            for (int j = 0; j < s.n; ++j)
                if (lifted[i][j] != 0) moved[j] += cq[i] * lifted[i][j];
        }
        if ((shannon_entropy_micro(moved) - shannon_entropy_micro(cq)).sign() < 0)
            throw IdentityError("lifted kernel step decreased micro entropy");

        cur = apply_kernel(m, cur);
    }
    for (size_t t = 0; t + 1 < rep.markov_trace.size(); ++t) {
        int sgn = (rep.markov_trace[t + 1] - rep.markov_trace[t]).sign();
        if (sgn < 0) throw IdentityError("kernel step decreased H+S");
        rep.step_equality.push_back(sgn == 0);
    }
    return rep;
}

}  // namespace micromacro
