#ifndef KQG_MATRICES_HPP
#define KQG_MATRICES_HPP

// Labeled symbolic matrices attached to an index tuple P:
//   - the upper-triangular (m-3) x (m-3) matrix N2_full built from the
//     variable blocks S_{nu,mu} with identity pivots;
//   - its two column-embeddings into m-2 columns (plain and shifted one
//     column right), stacked with the y-rows S'(P) to form N1_full;
//   - zero-row stripping (N1, N2) and the label-driven submatrix extraction,
//     including the square submatrices A_{j,k}.
//
// Row labels: "a-" (upper copy, printed as overline in the source material's
// convention), "a_" (shifted copy), "a'" (y-rows).  Column labels 1..m-2,
// named so that column b of the shifted copy carries x(a, b-1).

#include <algorithm>
#include <cassert>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kqg/poly.hpp"
#include "kqg/tuples.hpp"

namespace kqg {

struct RowLabel {
    enum class Tag { Over, Under, Prime };
    Tag tag = Tag::Over;
    int index = 0;

    friend bool operator==(const RowLabel& a, const RowLabel& b) {
        return a.tag == b.tag && a.index == b.index;
    }
    friend bool operator<(const RowLabel& a, const RowLabel& b) {
        if (a.tag != b.tag) return static_cast<int>(a.tag) < static_cast<int>(b.tag);
        return a.index < b.index;
    }
    std::string str() const {
        switch (tag) {
            case Tag::Over: return std::to_string(index) + "-";
            case Tag::Under: return std::to_string(index) + "_";
            default: return std::to_string(index) + "'";
        }
    }
};

inline RowLabel over(int a) { return RowLabel{RowLabel::Tag::Over, a}; }
inline RowLabel under(int a) { return RowLabel{RowLabel::Tag::Under, a}; }
inline RowLabel prime(int a) { return RowLabel{RowLabel::Tag::Prime, a}; }

struct LabeledMatrix {
    std::vector<RowLabel> row_labels;
    std::vector<int> col_labels;
    std::vector<std::vector<PolyZ>> entries; // row-major

    int rows() const { return static_cast<int>(row_labels.size()); }
    int cols() const { return static_cast<int>(col_labels.size()); }

    const PolyZ& at(int r, int c) const { return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

    int find_row(const RowLabel& l) const {
        for (int r = 0; r < rows(); ++r)
            if (row_labels[static_cast<std::size_t>(r)] == l) return r;
        return -1;
    }
    int find_col(int label) const {
        for (int c = 0; c < cols(); ++c)
            if (col_labels[static_cast<std::size_t>(c)] == label) return c;
        return -1;
    }

    bool row_is_zero(int r) const {
        for (const auto& p : entries[static_cast<std::size_t>(r)])
            if (!p.is_zero()) return false;
        return true;
    }

    std::vector<Var> variables() const {
        std::vector<std::uint32_t> keys;
        for (const auto& row : entries)
            for (const auto& p : row)
                for (const auto& v : p.variables()) keys.push_back(v.key());
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<Var> out;
        out.reserve(keys.size());
        for (auto k : keys) out.push_back(Var::from_key(k));
        return out;
    }

    std::string render_text() const {
        // Column widths per column, including header.
        std::vector<std::string> head(static_cast<std::size_t>(cols()));
        std::vector<std::size_t> w(static_cast<std::size_t>(cols()));
        for (int c = 0; c < cols(); ++c) {
            head[static_cast<std::size_t>(c)] = std::to_string(col_labels[static_cast<std::size_t>(c)]);
            w[static_cast<std::size_t>(c)] = head[static_cast<std::size_t>(c)].size();
        }
        std::vector<std::vector<std::string>> cell(static_cast<std::size_t>(rows()));
        std::size_t lw = 0;
        for (int r = 0; r < rows(); ++r) {
            lw = std::max(lw, row_labels[static_cast<std::size_t>(r)].str().size());
            cell[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(cols()));
            for (int c = 0; c < cols(); ++c) {
                std::string s = at(r, c).str();
                w[static_cast<std::size_t>(c)] = std::max(w[static_cast<std::size_t>(c)], s.size());
                cell[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = std::move(s);
            }
        }
        std::ostringstream os;
        os << std::string(lw + 2, ' ');
        for (int c = 0; c < cols(); ++c)
            os << std::setw(static_cast<int>(w[static_cast<std::size_t>(c)]) + 2)
               << head[static_cast<std::size_t>(c)];
        os << '\n';
        for (int r = 0; r < rows(); ++r) {
            os << std::setw(static_cast<int>(lw) + 2) << row_labels[static_cast<std::size_t>(r)].str();
            for (int c = 0; c < cols(); ++c)
                os << std::setw(static_cast<int>(w[static_cast<std::size_t>(c)]) + 2)
                   << cell[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            os << '\n';
        }
        return os.str();
    }
};

// Entry (a, b) of N2_full, a, b in [1, m-3]: rows striped by block, identity
// pivot on the diagonal for rows in b_set, x(a, b) in the variable range of
// every block mu >= nu(a), zero elsewhere (upper triangular by construction).
inline PolyZ n2_entry(const IndexTuple& P, int a, int b) {
    int nu = block_of_row(P, a);
    if (nu == 0) return PolyZ::zero();
    if (a == b) return PolyZ::constant(Int(1));
    int mu = block_of_col(P, b);
    if (mu >= nu) return PolyZ::variable(xvar(a, b));
    return PolyZ::zero();
}

// The variable block S_{nu,mu}: (i_2nu - i_{2nu-1}) x (i_{2mu+1} - i_2mu)
// grid with entry (r, c) = x(i_{2nu-1} + r, i_2mu + c).
inline LabeledMatrix build_block_S(const IndexTuple& P, int nu, int mu) {
    if (nu < 0 || nu > P.n() || mu < 0 || mu > P.n())
        throw std::invalid_argument("build_block_S: block index out of range");
    LabeledMatrix M;
    for (int a = P.at(2 * nu - 1) + 1; a <= P.at(2 * nu); ++a) M.row_labels.push_back(over(a));
    for (int b = P.at(2 * mu) + 1; b <= P.at(2 * mu + 1); ++b) M.col_labels.push_back(b);
    M.entries.assign(static_cast<std::size_t>(M.rows()),
                     std::vector<PolyZ>(static_cast<std::size_t>(M.cols())));
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c)
            M.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                PolyZ::variable(xvar(M.row_labels[static_cast<std::size_t>(r)].index,
                                     M.col_labels[static_cast<std::size_t>(c)]));
    return M;
}

inline LabeledMatrix build_N2_full(const IndexTuple& P) {
    int sz = P.m - 3;
    LabeledMatrix M;
    for (int a = 1; a <= sz; ++a) M.row_labels.push_back(over(a));
    for (int b = 1; b <= sz; ++b) M.col_labels.push_back(b);
    M.entries.assign(static_cast<std::size_t>(sz), std::vector<PolyZ>(static_cast<std::size_t>(sz)));
    for (int a = 1; a <= sz; ++a)
        for (int b = 1; b <= sz; ++b)
            M.entries[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = n2_entry(P, a, b);
    return M;
}

// Column labels of N1 in which the y-rows may carry variables: the non-pivot
// columns (not a pivot of the plain copy, the shifted copy, or a y-row).
inline std::vector<int> sprime_columns(const IndexTuple& P, int row_a) {
    std::vector<int> out;
    auto bs = b_set(P);
    auto as = a_set(P);
    auto in = [](const std::vector<int>& v, int x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };
    for (int l = row_a + 1; l <= P.m - 2; ++l) {
        if (in(bs, l) || in(bs, l - 1) || in(as, l - 1)) continue;
        out.push_back(l);
    }
    return out;
}

inline bool sprime_has_variable(const IndexTuple& P, int row_a, int col) {
    auto cols = sprime_columns(P, row_a);
    return std::find(cols.begin(), cols.end(), col) != cols.end();
}

inline LabeledMatrix build_N1_full(const IndexTuple& P) {
    int sz = P.m - 3, width = P.m - 2;
    LabeledMatrix M;
    for (int a = 1; a <= sz; ++a) M.row_labels.push_back(over(a));
    for (int a = 1; a <= sz; ++a) M.row_labels.push_back(under(a));
    auto ablocks = a_blocks(P);
    for (int beta : ablocks) M.row_labels.push_back(prime(P.at(2 * beta) + 1));
    for (int b = 1; b <= width; ++b) M.col_labels.push_back(b);
    M.entries.assign(static_cast<std::size_t>(M.rows()),
                     std::vector<PolyZ>(static_cast<std::size_t>(width)));
    for (int a = 1; a <= sz; ++a)
        for (int b = 1; b <= width; ++b) {
            // plain copy: columns 1..m-3, zero in the last column
            if (b <= sz)
                M.entries[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
                    n2_entry(P, a, b);
            // shifted copy: column b carries x(a, b-1)
            if (b >= 2)
                M.entries[static_cast<std::size_t>(sz + a - 1)][static_cast<std::size_t>(b - 1)] =
                    n2_entry(P, a, b - 1);
        }
    for (std::size_t t = 0; t < ablocks.size(); ++t) {
        std::size_t r = static_cast<std::size_t>(2 * sz) + t;
        int a = P.at(2 * ablocks[t]) + 1; // pivot column of this y-row
        M.entries[r][static_cast<std::size_t>(a - 1)] = PolyZ::constant(Int(1));
        for (int l : sprime_columns(P, a))
            M.entries[r][static_cast<std::size_t>(l - 1)] = PolyZ::variable(yvar(a, l));
    }
    return M;
}

inline LabeledMatrix strip_zero_rows(const LabeledMatrix& M) {
    LabeledMatrix R;
    R.col_labels = M.col_labels;
    for (int r = 0; r < M.rows(); ++r)
        if (!M.row_is_zero(r)) {
            R.row_labels.push_back(M.row_labels[static_cast<std::size_t>(r)]);
            R.entries.push_back(M.entries[static_cast<std::size_t>(r)]);
        }
    return R;
}

inline LabeledMatrix build_N1(const IndexTuple& P) { return strip_zero_rows(build_N1_full(P)); }
inline LabeledMatrix build_N2(const IndexTuple& P) { return strip_zero_rows(build_N2_full(P)); }

inline LabeledMatrix general_submatrix(const LabeledMatrix& M,
                                       const std::vector<RowLabel>& remove_rows,
                                       const std::vector<int>& remove_cols) {
    for (const auto& l : remove_rows)
        if (M.find_row(l) < 0)
            throw std::invalid_argument("general_submatrix: unknown row label " + l.str());
    for (int c : remove_cols)
        if (M.find_col(c) < 0)
            throw std::invalid_argument("general_submatrix: unknown column label " +
                                        std::to_string(c));
    LabeledMatrix R;
    std::vector<int> keep_cols;
    for (int c = 0; c < M.cols(); ++c) {
        int lab = M.col_labels[static_cast<std::size_t>(c)];
        if (std::find(remove_cols.begin(), remove_cols.end(), lab) == remove_cols.end()) {
            R.col_labels.push_back(lab);
            keep_cols.push_back(c);
        }
    }
    for (int r = 0; r < M.rows(); ++r) {
        const auto& lab = M.row_labels[static_cast<std::size_t>(r)];
        if (std::find(remove_rows.begin(), remove_rows.end(), lab) != remove_rows.end()) continue;
        R.row_labels.push_back(lab);
        std::vector<PolyZ> row;
        row.reserve(keep_cols.size());
        for (int c : keep_cols) row.push_back(M.at(r, c));
        R.entries.push_back(std::move(row));
    }
    return R;
}

// Removable column labels: the zero columns left of the first block, the
// non-pivot variable columns of the shifted copy, and the tail columns after
// the last block (the final interval absorbs column m-2, so it is empty when
// the last block reaches the top).  Removable row labels: all but the last
// row of each block, in the shifted copy.  These counts make the extracted
// submatrix square of size e1 + 1 for every admissible (j, k).
inline std::vector<int> removable_columns(const IndexTuple& P) {
    std::vector<int> out;
    for (int g = 1; g <= P.at(1); ++g) out.push_back(g);
    for (int beta = 1; beta <= P.n(); ++beta) {
        int hi = beta == P.n() ? P.m - 2 : P.at(2 * beta + 1);
        for (int g = P.at(2 * beta) + 2; g <= hi; ++g) out.push_back(g);
    }
    return out;
}

inline std::vector<RowLabel> removable_rows(const IndexTuple& P) {
    std::vector<RowLabel> out;
    for (int beta = 1; beta <= P.n(); ++beta)
        for (int g = P.at(2 * beta - 1) + 1; g <= P.at(2 * beta) - 1; ++g) out.push_back(under(g));
    return out;
}

inline LabeledMatrix extract_A(const IndexTuple& P, int j, int k) {
    std::vector<int> rc = removable_columns(P);
    rc.erase(std::remove(rc.begin(), rc.end(), k + 1), rc.end());
    std::vector<RowLabel> rr = removable_rows(P);
    rr.erase(std::remove(rr.begin(), rr.end(), under(j)), rr.end());
    return general_submatrix(build_N1(P), rr, rc);
}

} // namespace kqg

#endif // KQG_MATRICES_HPP
