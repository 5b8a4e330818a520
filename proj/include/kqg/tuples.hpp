#ifndef KQG_TUPLES_HPP
#define KQG_TUPLES_HPP

// Interleaved index tuples P = (i_1, ..., i_2n) over [0, m-3] with
//   i_1 <= i_2 < i_3 <= i_4 < ... < i_{2n-1} <= i_2n,
// together with the boundary conventions i_{-1} = i_0 = 0 and
// i_{2n+1} = m - 3.  These index the torus-fixed points / cells of the
// degree-m Grassmannian-type variety studied by this library.

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

namespace kqg {

struct IndexTuple {
    int m = 3;                 // family parameter, m >= 3
    std::vector<int> entries;  // (i_1, ..., i_2n), possibly empty

    int n() const { return static_cast<int>(entries.size()) / 2; }
    int top() const { return m - 3; } // largest admissible entry, = i_{2n+1}

    // i_t with conventions: t in [-1, 2n+1]; i_{-1} = i_0 = 0, i_{2n+1} = m-3.
    int at(int t) const {
        if (t <= 0) return 0;
        if (t >= 2 * n() + 1) return m - 3;
        return entries[static_cast<std::size_t>(t) - 1];
    }

    bool valid() const {
        if (m < 3) return false;
        if (entries.size() % 2 != 0) return false;
        for (int t = 1; t <= 2 * n(); ++t)
            if (at(t) < 0 || at(t) > m - 3) return false;
        for (int t = 1; t < 2 * n(); ++t) {
            if (t % 2 == 1) { // i_{odd} <= i_{odd+1}
                if (!(at(t) <= at(t + 1))) return false;
            } else { // i_{even} < i_{even+1}
                if (!(at(t) < at(t + 1))) return false;
            }
        }
        return true;
    }

    friend bool operator==(const IndexTuple& a, const IndexTuple& b) {
        return a.m == b.m && a.entries == b.entries;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries[i]);
        }
        s += ")";
        return s;
    }
};

// All tuples for a given m, ordered by (n, entries) lexicographically.
inline std::vector<IndexTuple> enumerate_tuples(int m) {
    if (m < 3) throw std::invalid_argument("enumerate_tuples: m must be >= 3");
    std::vector<IndexTuple> out;
    std::vector<int> cur;
    int top = m - 3;
    // Depth-first extension by full (i_{2j-1}, i_2j) pairs keeps lexicographic
    // order within fixed n; we bucket by n afterwards.
    std::vector<std::vector<std::vector<int>>> by_n(1);
    by_n[0].push_back({});
    for (int n = 1;; ++n) {
        std::vector<std::vector<int>> level;
        for (const auto& prev : by_n[n - 1]) {
            int lo = prev.empty() ? 0 : prev.back() + 1; // i_{2n-1} > i_{2n-2}
            for (int a = lo; a <= top; ++a)
                for (int b = a; b <= top; ++b) {
                    auto t = prev;
                    t.push_back(a);
                    t.push_back(b);
                    level.push_back(std::move(t));
                }
        }
        if (level.empty()) break;
        std::sort(level.begin(), level.end());
        by_n.push_back(std::move(level));
    }
    for (auto& bucket : by_n)
        for (auto& e : bucket) out.push_back(IndexTuple{m, std::move(e)});
    return out;
}

// Values i_2j with i_{2j-1} = i_2j (degenerate pairs).
inline std::vector<int> a_set(const IndexTuple& P) {
    std::vector<int> out;
    for (int j = 1; j <= P.n(); ++j)
        if (P.at(2 * j - 1) == P.at(2 * j)) out.push_back(P.at(2 * j));
    return out;
}

// Block indices j (1-based) of degenerate pairs.
inline std::vector<int> a_blocks(const IndexTuple& P) {
    std::vector<int> out;
    for (int j = 1; j <= P.n(); ++j)
        if (P.at(2 * j - 1) == P.at(2 * j)) out.push_back(j);
    return out;
}

// Union of the intervals [i_{2j-1}+1, i_2j], as a sorted value list.
inline std::vector<int> b_set(const IndexTuple& P) {
    std::vector<int> out;
    for (int j = 1; j <= P.n(); ++j)
        for (int v = P.at(2 * j - 1) + 1; v <= P.at(2 * j); ++v) out.push_back(v);
    return out;
}

// The intervals themselves, one (lo, hi) per non-degenerate pair j (lo = i_{2j-1}+1).
inline std::vector<std::pair<int, int>> b_interval_set(const IndexTuple& P) {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= P.n(); ++j)
        if (P.at(2 * j - 1) < P.at(2 * j))
            out.push_back({P.at(2 * j - 1) + 1, P.at(2 * j)});
    return out;
}

// (e_1, e_2): e_2 = |b_set|, e_1 = n + e_2.
struct DimVector {
    int e1 = 0;
    int e2 = 0;
};
inline DimVector dim_vector(const IndexTuple& P) {
    int e2 = 0;
    for (int j = 1; j <= P.n(); ++j) e2 += P.at(2 * j) - P.at(2 * j - 1);
    return DimVector{P.n() + e2, e2};
}

// Literal deletion of degenerate pairs; other entries are unchanged.
inline IndexTuple reduce(const IndexTuple& P) {
    IndexTuple R;
    R.m = P.m;
    for (int j = 1; j <= P.n(); ++j)
        if (P.at(2 * j - 1) != P.at(2 * j)) {
            R.entries.push_back(P.at(2 * j - 1));
            R.entries.push_back(P.at(2 * j));
        }
    return R;
}

// Block nu (1-based) with i_{2nu-1} + 1 <= row <= i_{2nu}; 0 when the row
// belongs to no block (not a member of b_set).
inline int block_of_row(const IndexTuple& P, int row) {
    for (int j = 1; j <= P.n(); ++j)
        if (P.at(2 * j - 1) + 1 <= row && row <= P.at(2 * j)) return j;
    return 0;
}

// Block mu (0-based up to n) with i_{2mu} + 1 <= col <= i_{2mu+1}; -1 when the
// column lies in no such range (it is then a pivot-side column of a block).
inline int block_of_col(const IndexTuple& P, int col) {
    for (int j = 0; j <= P.n(); ++j)
        if (P.at(2 * j) + 1 <= col && col <= P.at(2 * j + 1)) return j;
    return -1;
}

} // namespace kqg

#endif // KQG_TUPLES_HPP
