#ifndef KQG_LINALG_HPP
#define KQG_LINALG_HPP

// Exact linear algebra: symbolic determinants of polynomial matrices
// (cofactor expansion along the sparsest line, memoized on row/column
// subsets), minor enumeration, and numeric rank over Q and F_q.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kqg/fp61.hpp"
#include "kqg/matrices.hpp"
#include "kqg/poly.hpp"

namespace kqg {

namespace detail {

struct MaskPairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
        std::uint64_t h = p.first * 0x9e3779b97f4a7c15ULL;
        h ^= p.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

class DetWorker {
public:
    explicit DetWorker(const std::vector<std::vector<PolyZ>>& a) : a_(a) {}

    PolyZ run() {
        int n = static_cast<int>(a_.size());
        if (n > 64) throw std::invalid_argument("det_symbolic: matrix too large");
        std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
        return det(full, full, n);
    }

private:
    const std::vector<std::vector<PolyZ>>& a_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, PolyZ, MaskPairHash> memo_;

    PolyZ det(std::uint64_t rows, std::uint64_t cols, int n) {
        if (n == 0) return PolyZ::constant(Int(1));
        auto key = std::make_pair(rows, cols);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        // Pick the active row or column with the fewest nonzero entries.
        int best = -1, best_cnt = n + 1;
        bool best_is_row = true;
        for (int r = 0; r < static_cast<int>(a_.size()); ++r) {
            if (!(rows >> r & 1)) continue;
            int cnt = 0;
            for (int c = 0; c < static_cast<int>(a_.size()); ++c)
                if ((cols >> c & 1) && !a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) ++cnt;
            if (cnt < best_cnt) {
                best_cnt = cnt;
                best = r;
                best_is_row = true;
            }
        }
        for (int c = 0; c < static_cast<int>(a_.size()); ++c) {
            if (!(cols >> c & 1)) continue;
            int cnt = 0;
            for (int r = 0; r < static_cast<int>(a_.size()); ++r)
                if ((rows >> r & 1) && !a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) ++cnt;
            if (cnt < best_cnt) {
                best_cnt = cnt;
                best = c;
                best_is_row = false;
            }
        }
        PolyZ result;
        if (best_cnt > 0) {
            int pos = 0; // position of the expansion line among active lines
            if (best_is_row) {
                for (int r = 0; r < best; ++r)
                    if (rows >> r & 1) ++pos;
                int cpos = 0;
                for (int c = 0; c < static_cast<int>(a_.size()); ++c) {
                    if (!(cols >> c & 1)) continue;
                    const PolyZ& e = a_[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)];
                    if (!e.is_zero()) {
                        PolyZ sub = det(rows & ~(1ULL << best), cols & ~(1ULL << c), n - 1);
                        PolyZ term = e * sub;
                        if ((pos + cpos) % 2 == 1) term = -term;
                        result += term;
                    }
                    ++cpos;
                }
            } else {
                for (int c = 0; c < best; ++c)
                    if (cols >> c & 1) ++pos;
                int rpos = 0;
                for (int r = 0; r < static_cast<int>(a_.size()); ++r) {
                    if (!(rows >> r & 1)) continue;
                    const PolyZ& e = a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(best)];
                    if (!e.is_zero()) {
                        PolyZ sub = det(rows & ~(1ULL << r), cols & ~(1ULL << best), n - 1);
                        PolyZ term = e * sub;
                        if ((pos + rpos) % 2 == 1) term = -term;
                        result += term;
                    }
                    ++rpos;
                }
            }
        }
        memo_.emplace(key, result);
        return result;
    }
};

} // namespace detail

inline PolyZ det_symbolic(const std::vector<std::vector<PolyZ>>& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw std::invalid_argument("det_symbolic: matrix not square");
    detail::DetWorker w(a);
    return w.run();
}

inline PolyZ det_symbolic(const LabeledMatrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("det_symbolic: matrix not square");
    return det_symbolic(M.entries);
}

// Naive first-row cofactor expansion; independent cross-check for tests.
inline PolyZ det_naive(const std::vector<std::vector<PolyZ>>& a) {
    std::size_t n = a.size();
    if (n == 0) return PolyZ::constant(Int(1));
    if (n == 1) return a[0][0];
    PolyZ result;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c].is_zero()) continue;
        std::vector<std::vector<PolyZ>> sub(n - 1, std::vector<PolyZ>(n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == c) continue;
                sub[r - 1][cc++] = a[r][k];
            }
        }
        PolyZ term = a[0][c] * det_naive(sub);
        if (c % 2 == 1) term = -term;
        result += term;
    }
    return result;
}

struct Minor {
    std::vector<RowLabel> rows;
    std::vector<int> cols;
    PolyZ det;
};

// Visit every size x size minor, column subsets advancing fastest, both in
// colexicographic order.  The callback may return false to stop early.
inline void for_each_minor(const LabeledMatrix& M, int size,
                           const std::function<bool(const Minor&)>& visit) {
    if (size < 0 || size > M.rows() || size > M.cols())
        throw std::invalid_argument("for_each_minor: size out of range");
    auto subsets = [](int n, int k) {
        // all k-subsets of [0,n) in colexicographic order
        std::vector<std::vector<int>> out;
        std::vector<int> cur(static_cast<std::size_t>(k));
        std::function<void(int, int)> rec = [&](int depth, int limit) {
            if (depth == 0) {
                out.push_back(cur);
                return;
            }
            for (int v = depth - 1; v < limit; ++v) {
                cur[static_cast<std::size_t>(depth - 1)] = v;
                rec(depth - 1, v);
            }
        };
        rec(k, n);
        for (auto& s : out) std::reverse(s.begin(), s.end());
        return out;
    };
    auto rsets = subsets(M.rows(), size);
    auto csets = subsets(M.cols(), size);
    for (const auto& rs : rsets)
        for (const auto& cs : csets) {
            Minor mn;
            std::vector<std::vector<PolyZ>> sub(static_cast<std::size_t>(size),
                                                std::vector<PolyZ>(static_cast<std::size_t>(size)));
            for (int r = 0; r < size; ++r) {
                mn.rows.push_back(M.row_labels[static_cast<std::size_t>(rs[static_cast<std::size_t>(r)])]);
                for (int c = 0; c < size; ++c)
                    sub[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        M.at(rs[static_cast<std::size_t>(r)], cs[static_cast<std::size_t>(c)]);
            }
            for (int c = 0; c < size; ++c)
                mn.cols.push_back(M.col_labels[static_cast<std::size_t>(cs[static_cast<std::size_t>(c)])]);
            mn.det = det_symbolic(sub);
            if (!visit(mn)) return;
        }
}

// Rank over F_q by Gaussian elimination.
inline int rank(std::vector<std::vector<Fp61>> a) {
    if (a.empty()) return 0;
    std::size_t rows = a.size(), cols = a[0].size();
    int r = 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = static_cast<std::size_t>(r); i < rows; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[static_cast<std::size_t>(r)], a[piv]);
        Fp61 inv = a[static_cast<std::size_t>(r)][c].inv();
        for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            Fp61 f = a[i][c] * inv;
            for (std::size_t k = c; k < cols; ++k)
                a[i][k] -= f * a[static_cast<std::size_t>(r)][k];
        }
        ++r;
    }
    return r;
}

// Rank over Q: clear row denominators, then fraction-free (Bareiss-style)
// elimination over the integers.
inline int rank(const std::vector<std::vector<Rat>>& m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < cols; ++j)
            l = boost::multiprecision::lcm(l, Int(boost::multiprecision::denominator(m[i][j])));
        for (std::size_t j = 0; j < cols; ++j) {
            Rat v = m[i][j] * Rat(l);
            a[i][j] = Int(boost::multiprecision::numerator(v));
        }
    }
    int r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = static_cast<std::size_t>(r); i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[static_cast<std::size_t>(r)], a[piv]);
        for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k)
                a[i][k] = (a[static_cast<std::size_t>(r)][c] * a[i][k] -
                           a[i][c] * a[static_cast<std::size_t>(r)][k]) /
                          prev;
            a[i][c] = 0;
        }
        prev = a[static_cast<std::size_t>(r)][c];
        ++r;
    }
    return r;
}

// Evaluate a labeled polynomial matrix at a full assignment.
template <class F, class Assign>
std::vector<std::vector<F>> evaluate_matrix(const LabeledMatrix& M, Assign&& assign) {
    std::vector<std::vector<F>> out(static_cast<std::size_t>(M.rows()),
                                    std::vector<F>(static_cast<std::size_t>(M.cols())));
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c)
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                M.at(r, c).template evaluate<F>(assign);
    return out;
}

} // namespace kqg

#endif // KQG_LINALG_HPP
