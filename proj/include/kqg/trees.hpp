#ifndef KQG_TREES_HPP
#define KQG_TREES_HPP

// The two families of alternating-chain trees used to organise relation
// terms.  A vertex is a chain (m_0, m_1, ..., m_alpha) with m_0 = mu and all
// entries in [nu, mu]; a child appends one entry subject to an alternating
// weak/strict descent rule that depends on the family eta:
//   eta = 1: weak descent at odd positions, strict at even positions;
//   eta = 2: strict descent at odd positions, weak at even positions.
// Chain lengths are capped at 2n entries (eta = 1) resp. 2n - 1 (eta = 2);
// with nu >= 1 the descent rules terminate chains well before the cap for all
// parameter ranges used here, so the cap is a safety bound only.
//
// The framed variant attaches to every plain vertex a single framed leaf
// carrying the same chain.

#include <cassert>
#include <vector>

namespace kqg {

struct TreeVertex {
    std::vector<int> chain; // (m_0, ..., m_alpha)
    int parent = -1;        // index into FibTree::vertices, -1 for the root

    int depth() const { return static_cast<int>(chain.size()) - 1; }
};

struct FibTree {
    int eta = 1, nu = 1, mu = 1, n = 1;
    std::vector<TreeVertex> vertices; // plain vertices, depth-first order
};

// Whether appending `next` after `last` at position `pos` (1-based index of
// the new entry) is allowed for family eta.
inline bool chain_step_ok(int eta, int pos, int last, int next) {
    bool strict = (eta == 1) ? (pos % 2 == 0) : (pos % 2 == 1);
    return strict ? next < last : next <= last;
}

inline FibTree build_tree(int eta, int nu, int mu, int n) {
    assert(eta == 1 || eta == 2);
    assert(1 <= nu && nu <= mu);
    FibTree T{eta, nu, mu, n, {}};
    int max_len = (eta == 1) ? 2 * n : 2 * n - 1; // entries per chain
    struct Frame {
        std::vector<int> chain;
        int index;
    };
    // Depth-first, children in descending entry order (deterministic).
    std::vector<Frame> stack;
    T.vertices.push_back(TreeVertex{{mu}, -1});
    stack.push_back({{mu}, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        int len = static_cast<int>(f.chain.size());
        if (len >= max_len) continue;
        int pos = len; // position of the entry about to be appended
        for (int next = mu; next >= nu; --next) {
            if (!chain_step_ok(eta, pos, f.chain.back(), next)) continue;
            auto c = f.chain;
            c.push_back(next);
            T.vertices.push_back(TreeVertex{c, f.index});
            stack.push_back({std::move(c), static_cast<int>(T.vertices.size()) - 1});
        }
    }
    return T;
}

// Vertex count of the framed tree: one framed leaf per plain vertex.
inline std::size_t framed_vertex_count(const FibTree& T) { return 2 * T.vertices.size(); }

// Indices of the plain vertices along the root path of vertex i, excluding
// the root, ending at i itself.
inline std::vector<int> path_from_root(const FibTree& T, int i) {
    std::vector<int> path;
    for (int v = i; v != 0 && v != -1; v = T.vertices[static_cast<std::size_t>(v)].parent)
        path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace kqg

#endif // KQG_TREES_HPP
