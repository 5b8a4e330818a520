#ifndef KQG_CLUSTER_HPP
#define KQG_CLUSTER_HPP

// The rank-2 exchange recursion x_{m-1} * x_{m+1} = x_m^2 + 1 and the cell
// census that categorifies it.  Laurent polynomials in two variables u, v are
// stored as integer-exponent maps; the recursion is evaluated with exact
// polynomial division, so every x_m is produced in lowest terms.

#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>

#include "kqg/poly.hpp"
#include "kqg/tuples.hpp"

namespace kqg {

// Sparse Laurent polynomial in u, v over the integers.
class Laurent2 {
public:
    using Exp = std::pair<int, int>;
    using Terms = std::map<Exp, Int>;

    Laurent2() = default;
    static Laurent2 constant(Int c) {
        Laurent2 p;
        p.add_term({0, 0}, std::move(c));
        return p;
    }
    static Laurent2 monomial(int eu, int ev, Int c = Int(1)) {
        Laurent2 p;
        p.add_term({eu, ev}, std::move(c));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    void add_term(Exp e, Int c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Laurent2 operator+(const Laurent2& o) const {
        Laurent2 r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    Laurent2 operator-(const Laurent2& o) const {
        Laurent2 r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    Laurent2 operator*(const Laurent2& o) const {
        Laurent2 r;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_)
                r.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
        return r;
    }

    friend bool operator==(const Laurent2& a, const Laurent2& b) {
        return a.terms_ == b.terms_;
    }

    // Leading term under graded lex (total degree, then u-degree).
    std::pair<Exp, Int> leading() const {
        assert(!terms_.empty());
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
            int db = best->first.first + best->first.second;
            int di = it->first.first + it->first.second;
            if (di > db || (di == db && it->first.first > best->first.first)) best = it;
        }
        return *best;
    }

    // Exact division; throws when the quotient is not a Laurent polynomial
    // with integer coefficients.
    Laurent2 divide_exact(const Laurent2& d) const {
        if (d.is_zero()) throw std::invalid_argument("Laurent2: division by zero");
        Laurent2 rem = *this, q;
        while (!rem.is_zero()) {
            auto [er, cr] = rem.leading();
            auto [ed, cd] = d.leading();
            if (cr % cd != 0) throw std::runtime_error("Laurent2: inexact division");
            Laurent2 t = monomial(er.first - ed.first, er.second - ed.second, cr / cd);
            q = q + t;
            rem = rem - t * d;
        }
        return q;
    }

    Int evaluate_at_ones() const {
        Int s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

private:
    Terms terms_;
};

// Cell counts per dimension vector (e1, e2).
inline std::map<std::pair<int, int>, int> chi_table(int m) {
    std::map<std::pair<int, int>, int> chi;
    for (const auto& P : enumerate_tuples(m)) {
        DimVector d = dim_vector(P);
        chi[{d.e1, d.e2}] += 1;
    }
    return chi;
}

// x_m for the exchange recursion with initial cluster {x_1 = u, x_2 = v}.
inline Laurent2 cluster_variable(int m) {
    if (m < 1) throw std::invalid_argument("cluster_variable: m must be >= 1");
    Laurent2 prev = Laurent2::monomial(1, 0); // x_1
    if (m == 1) return prev;
    Laurent2 cur = Laurent2::monomial(0, 1); // x_2
    for (int t = 2; t < m; ++t) {
        Laurent2 next = (cur * cur + Laurent2::constant(Int(1))).divide_exact(prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Generating function of the cell decomposition: each tuple P contributes
// u^{2 e2} v^{2(d1 - e1)} scaled by the overall monomial u^{-d1} v^{-d2},
// where (d1, d2) = (m-2, m-3).  The exponents use the codimensions of the
// subspace pair; using (d2 - e2, e1) instead fails the recursion already at
// m = 4.
inline Laurent2 x_of_module(int m) {
    if (m < 3) throw std::invalid_argument("x_of_module: m must be >= 3");
    int d1 = m - 2, d2 = m - 3;
    Laurent2 sum;
    for (const auto& P : enumerate_tuples(m)) {
        DimVector d = dim_vector(P);
        sum = sum + Laurent2::monomial(2 * d.e2, 2 * (d1 - d.e1));
    }
    return Laurent2::monomial(-d1, -d2) * sum;
}

} // namespace kqg

#endif // KQG_CLUSTER_HPP
