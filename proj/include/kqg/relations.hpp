#ifndef KQG_RELATIONS_HPP
#define KQG_RELATIONS_HPP

// Leading-term sets L(j,k), the phi-labelling of framed tree vertices, the
// relation polynomials D_{j,k} and Dhat_{j,k}, the generator list over the JK
// pair set, and the solving order used to construct cell points.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kqg/matrices.hpp"
#include "kqg/poly.hpp"
#include "kqg/trees.hpp"
#include "kqg/tuples.hpp"

namespace kqg {

// The 0, 1 or 2 variables forming the linear part of Dhat_{j,k}.
// Case (a): k is the very last column label m-3 and the last variable column
//   group is wider than one column -> {x(j,k)} for every non-last row of a
//   block; case (b): that group is a single column -> {x(j,k)} for every
//   block row; case (c): k lies strictly inside the variable range of block
//   mu -> {x(j,k), x(j+1,k+1)} for every non-last block row.
inline std::vector<Var> leading_terms(const IndexTuple& P, int j, int k) {
    int n = P.n();
    int nu = block_of_row(P, j);
    int mu = block_of_col(P, k);
    if (nu < 1 || mu < nu) return {};
    int last = P.at(2 * n + 1); // = m-3
    if (k == last && mu == n) {
        if (P.at(2 * n) + 1 == last) return {xvar(j, k)};
        if (j < P.at(2 * nu)) return {xvar(j, k)};
        return {};
    }
    if (k < P.at(2 * mu + 1) && j < P.at(2 * nu)) return {xvar(j, k), xvar(j + 1, k + 1)};
    return {};
}

// JK: all (j,k) with nonempty leading-term set, j not the last row of its
// block, and k outside the degenerate values, ordered by (k, j).  Last block
// rows are excluded even when their leading-term set is nonempty: their
// variables stay free (the rank conditions never constrain them), and they
// admit no square minor of the required shape.
struct JkPair {
    int j = 0, k = 0, nu = 0, mu = 0;
    friend bool operator==(const JkPair& a, const JkPair& b) { return a.j == b.j && a.k == b.k; }
};

inline std::vector<JkPair> jk_set(const IndexTuple& P) {
    std::vector<JkPair> out;
    auto as = a_set(P);
    for (int k = 1; k <= P.m - 3; ++k)
        for (int j = 1; j <= P.m - 3; ++j) {
            if (leading_terms(P, j, k).empty()) continue;
            if (std::find(as.begin(), as.end(), k) != as.end()) continue;
            int nu = block_of_row(P, j);
            if (j >= P.at(2 * nu)) continue;
            out.push_back(JkPair{j, k, nu, block_of_col(P, k)});
        }
    return out;
}

// Whether dropping the degenerate-value filter would enlarge JK (reported by
// the verification engine; never observed to fire).
inline bool jk_a_filter_active(const IndexTuple& P) {
    auto as = a_set(P);
    for (int k : as)
        for (int j = 1; j <= P.m - 3; ++j)
            if (!leading_terms(P, j, k).empty()) return true;
    return false;
}

// phi-labelling of a (framed) tree vertex.  `chain` is the vertex tuple
// (m_0, ..., m_alpha); index values are taken from the tuple P that the tree
// was built over.  The root maps to 1; every other case yields one variable.
inline PolyZ phi(const IndexTuple& P, int eta, int j, int k, const std::vector<int>& chain,
                 bool framed) {
    if (eta != 1 && eta != 2) throw std::invalid_argument("phi: eta must be 1 or 2");
    auto X = [](int a, int b) { return PolyZ::variable(xvar(a, b)); };
    auto I = [&P](int t) { return P.at(t); };
    int alpha = static_cast<int>(chain.size()) - 1;
    if (alpha < 0) throw std::invalid_argument("phi: empty chain");
    if (alpha == 0) {
        if (!framed) return PolyZ::constant(Int(1));
        return eta == 1 ? X(j, k) : X(j + 1, k + 1);
    }
    int ma = chain[static_cast<std::size_t>(alpha)];
    int mp = chain[static_cast<std::size_t>(alpha) - 1];
    if (alpha == 1) {
        if (!framed) return eta == 1 ? X(I(2 * ma), k) : X(I(2 * ma + 1) + 1, k + 1);
        return eta == 1 ? X(j + 1, I(2 * ma) + 1) : X(j, I(2 * ma + 1));
    }
    if (alpha % 2 == 0) {
        if (!framed) return eta == 1 ? X(I(2 * ma + 1) + 1, I(2 * mp) + 1) : X(I(2 * ma), I(2 * mp + 1));
        return eta == 1 ? X(j, I(2 * ma + 1)) : X(j + 1, I(2 * ma) + 1);
    }
    if (!framed) return eta == 1 ? X(I(2 * ma), I(2 * mp + 1)) : X(I(2 * ma) + 1, I(2 * mp));
    return eta == 1 ? X(j + 1, I(2 * ma) + 1) : X(j, I(2 * ma + 1));
}

// D_{j,k} over the tuple P (which must have no degenerate pairs for the
// result to involve only matrix variables): signed sum over the framed trees
// of the leading-term families.
inline PolyZ relation_D(const IndexTuple& P, int j, int k) {
    auto L = leading_terms(P, j, k);
    if (L.empty()) throw std::invalid_argument("relation_D: empty leading-term set");
    int nu = block_of_row(P, j), mu = block_of_col(P, k);
    PolyZ D;
    for (int eta = 1; eta <= static_cast<int>(L.size()); ++eta) {
        FibTree T = build_tree(eta, nu, mu, P.n());
        for (std::size_t v = 0; v < T.vertices.size(); ++v) {
            PolyZ term = phi(P, eta, j, k, T.vertices[v].chain, /*framed=*/true);
            for (int p : path_from_root(T, static_cast<int>(v)))
                term *= phi(P, eta, j, k, T.vertices[static_cast<std::size_t>(p)].chain,
                            /*framed=*/false);
            if (eta == 2) term = -term;
            D += term;
        }
    }
    return D;
}

// Dhat_{j,k}: equal to D for tuples without degenerate pairs; otherwise every
// D is computed over the reduced tuple, and each degenerate pair contributes
// a correction -y(i+1, k+1) * D_{j,i} provided that y-variable actually
// occurs in the y-rows and the inner leading-term set is nonempty.
inline PolyZ relation_Dhat(const IndexTuple& P, int j, int k) {
    auto ab = a_blocks(P);
    if (ab.empty()) return relation_D(P, j, k);
    IndexTuple R = reduce(P);
    PolyZ out = leading_terms(R, j, k).empty() ? PolyZ::zero() : relation_D(R, j, k);
    for (int beta : ab) {
        int i2b = P.at(2 * beta);
        if (!sprime_has_variable(P, i2b + 1, k + 1)) continue;
        if (leading_terms(R, j, i2b).empty()) continue;
        out -= PolyZ::variable(yvar(i2b + 1, k + 1)) * relation_D(R, j, i2b);
    }
    return out;
}

// The linear part prescribed by the leading-term set.
inline PolyZ linear_table(const IndexTuple& P, int j, int k) {
    auto L = leading_terms(P, j, k);
    if (L.empty()) return PolyZ::zero();
    PolyZ p = PolyZ::variable(L[0]);
    if (L.size() == 2) p -= PolyZ::variable(L[1]);
    return p;
}

struct RelationPoly {
    JkPair jk;
    PolyZ D;    // over the reduced tuple
    PolyZ Dhat; // generator of the relation ideal
    PolyZ L;    // linear part
};

inline std::vector<RelationPoly> generator_set(const IndexTuple& P) {
    std::vector<RelationPoly> out;
    IndexTuple R = reduce(P);
    for (const auto& jk : jk_set(P)) {
        RelationPoly g;
        g.jk = jk;
        g.Dhat = relation_Dhat(P, jk.j, jk.k);
        g.D = leading_terms(R, jk.j, jk.k).empty() ? PolyZ::zero()
                                                   : relation_D(R, jk.j, jk.k);
        g.L = g.Dhat.linear_part();
        out.push_back(std::move(g));
    }
    return out;
}

// Topological order for solving: (j',k') must come before (j,k) whenever the
// variable x(j',k') occurs anywhere in Dhat_{j,k}.  Ties broken by (k, j)
// ascending.  Throws when the dependency relation is cyclic (which would
// falsify unique solvability of the cell parametrization).
inline std::vector<JkPair> solving_order(const IndexTuple& P) {
    auto gens = generator_set(P);
    std::size_t n = gens.size();
    std::vector<std::vector<std::size_t>> needs(n); // needs[i]: must precede i
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) {
            if (t == i) continue;
            if (gens[i].Dhat.contains_var(xvar(gens[t].jk.j, gens[t].jk.k))) needs[i].push_back(t);
        }
    std::vector<bool> done(n, false);
    std::vector<JkPair> order;
    for (std::size_t round = 0; round < n; ++round) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) { // gens is already (k, j) sorted
            if (done[i]) continue;
            bool ready = true;
            for (std::size_t t : needs[i])
                if (!done[t]) ready = false;
            if (ready) {
                pick = i;
                break;
            }
        }
        if (pick == n)
            throw std::runtime_error("solving_order: cyclic dependency among relation generators for P=" +
                                     P.str());
        done[pick] = true;
        order.push_back(gens[pick].jk);
    }
    return order;
}

// The nonlinear-occurrence relation: (j,k) -> (j',k') iff x(j,k) appears in a
// monomial of degree >= 2 of Dhat_{j',k'}.  Returns true iff acyclic.
inline bool nonlinear_order_acyclic(const IndexTuple& P) {
    auto gens = generator_set(P);
    std::size_t n = gens.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t tgt = 0; tgt < n; ++tgt)
        for (std::size_t src = 0; src < n; ++src) {
            if (src == tgt) continue;
            Var v = xvar(gens[src].jk.j, gens[src].jk.k);
            for (const auto& [mono, c] : gens[tgt].Dhat.terms())
                if (mono.degree() >= 2 && mono.exponent_of(v) > 0) {
                    adj[src].push_back(tgt);
                    break;
                }
        }
    std::vector<int> state(n, 0);
    std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
        state[u] = 1;
        for (std::size_t w : adj[u]) {
            if (state[w] == 1) return false;
            if (state[w] == 0 && !dfs(w)) return false;
        }
        state[u] = 2;
        return true;
    };
    for (std::size_t u = 0; u < n; ++u)
        if (state[u] == 0 && !dfs(u)) return false;
    return true;
}

} // namespace kqg

#endif // KQG_RELATIONS_HPP
