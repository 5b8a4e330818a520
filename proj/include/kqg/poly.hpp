#ifndef KQG_POLY_HPP
#define KQG_POLY_HPP

// Sparse multivariate polynomials in the doubly indexed variables x[a,b] and
// y[a,b], with exact coefficients (arbitrary-precision integers or rationals,
// or a prime field).  Terms are kept in descending graded-lexicographic order,
// so rendering and iteration are deterministic.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kqg/fp61.hpp"

namespace kqg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

enum class VarKind : std::uint8_t { X = 0, Y = 1 };

struct Var {
    VarKind kind = VarKind::X;
    int a = 0;
    int b = 0;

    // Total order on variables: all x's before all y's, then by (a, b).
    std::uint32_t key() const {
        return (static_cast<std::uint32_t>(kind) << 24) |
               (static_cast<std::uint32_t>(a) << 12) |
               static_cast<std::uint32_t>(b);
    }
    static Var from_key(std::uint32_t k) {
        Var v;
        v.kind = static_cast<VarKind>((k >> 24) & 0xff);
        v.a = static_cast<int>((k >> 12) & 0xfff);
        v.b = static_cast<int>(k & 0xfff);
        return v;
    }

    friend bool operator==(const Var& l, const Var& r) { return l.key() == r.key(); }
    friend bool operator!=(const Var& l, const Var& r) { return !(l == r); }
    friend bool operator<(const Var& l, const Var& r) { return l.key() < r.key(); }

    std::string str() const {
        std::ostringstream os;
        os << (kind == VarKind::X ? 'x' : 'y') << '[' << a << ',' << b << ']';
        return os.str();
    }
};

inline Var xvar(int a, int b) { return Var{VarKind::X, a, b}; }
inline Var yvar(int a, int b) { return Var{VarKind::Y, a, b}; }

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

class Monomial {
public:
    // (variable key, exponent) pairs, keys strictly ascending, exponents > 0.
    using Entry = std::pair<std::uint32_t, int>;

    Monomial() = default;
    explicit Monomial(Var v) : entries_{{v.key(), 1}} {}

    static Monomial one() { return Monomial(); }

    bool is_one() const { return entries_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [k, e] : entries_) d += e;
        return d;
    }

    int exponent_of(Var v) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), v.key(),
                                   [](const Entry& en, std::uint32_t k) { return en.first < k; });
        return (it != entries_.end() && it->first == v.key()) ? it->second : 0;
    }

    const std::vector<Entry>& entries() const { return entries_; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.entries_.reserve(entries_.size() + o.entries_.size());
        auto i = entries_.begin(), j = o.entries_.begin();
        while (i != entries_.end() || j != o.entries_.end()) {
            if (j == o.entries_.end() || (i != entries_.end() && i->first < j->first)) {
                r.entries_.push_back(*i++);
            } else if (i == entries_.end() || j->first < i->first) {
                r.entries_.push_back(*j++);
            } else {
                r.entries_.push_back({i->first, i->second + j->second});
                ++i;
                ++j;
            }
        }
        return r;
    }

    // Exact division; returns std::nullopt when not divisible.
    std::optional<Monomial> divide(const Monomial& o) const {
        Monomial r;
        auto i = entries_.begin();
        for (const auto& [k, e] : o.entries_) {
            while (i != entries_.end() && i->first < k) r.entries_.push_back(*i++);
            if (i == entries_.end() || i->first != k || i->second < e) return std::nullopt;
            if (i->second > e) r.entries_.push_back({i->first, i->second - e});
            ++i;
        }
        while (i != entries_.end()) r.entries_.push_back(*i++);
        return r;
    }

    Monomial pow(int e) const {
        assert(e >= 0);
        Monomial r;
        r.entries_ = entries_;
        for (auto& [k, x] : r.entries_) x *= e;
        if (e == 0) r.entries_.clear();
        return r;
    }

    friend bool operator==(const Monomial& l, const Monomial& r) {
        return l.entries_ == r.entries_;
    }

    // Graded lex: higher total degree first; ties broken by giving the larger
    // exponent on the smallest variable key precedence.
    static int compare(const Monomial& l, const Monomial& r) {
        int dl = l.degree(), dr = r.degree();
        if (dl != dr) return dl < dr ? -1 : 1;
        auto i = l.entries_.begin(), j = r.entries_.begin();
        while (i != l.entries_.end() && j != r.entries_.end()) {
            if (i->first != j->first) return i->first < j->first ? 1 : -1;
            if (i->second != j->second) return i->second < j->second ? -1 : 1;
            ++i;
            ++j;
        }
        return 0; // equal degree and equal entries
    }

    std::string str() const {
        if (is_one()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, e] : entries_) {
            if (!first) os << '*';
            first = false;
            os << Var::from_key(k).str();
            if (e != 1) os << '^' << e;
        }
        return os.str();
    }

private:
    std::vector<Entry> entries_;
};

struct MonomialGreater {
    bool operator()(const Monomial& l, const Monomial& r) const {
        return Monomial::compare(l, r) > 0;
    }
};

// ---------------------------------------------------------------------------
// Coefficient conversions (ring of computation may differ from storage ring)
// ---------------------------------------------------------------------------

template <class F>
struct CoeffConv;

template <>
struct CoeffConv<Int> {
    static Int from(const Int& c) { return c; }
};

template <>
struct CoeffConv<Rat> {
    static Rat from(const Int& c) { return Rat(c); }
    static Rat from(const Rat& c) { return c; }
};

template <>
struct CoeffConv<Fp61> {
    static Fp61 from(const Int& c) {
        Int m = c % Int(Fp61::q);
        if (m < 0) m += Int(Fp61::q);
        return Fp61(static_cast<std::uint64_t>(m));
    }
    static Fp61 from(const Fp61& c) { return c; }
};

template <class C>
inline bool coeff_is_zero(const C& c) {
    return c == C(0);
}
template <>
inline bool coeff_is_zero<Fp61>(const Fp61& c) {
    return c.is_zero();
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

template <class C>
class Polynomial {
public:
    using Terms = std::map<Monomial, C, MonomialGreater>;

    Polynomial() = default;

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(C c) {
        Polynomial p;
        p.add_term(Monomial::one(), std::move(c));
        return p;
    }
    static Polynomial variable(Var v) {
        Polynomial p;
        p.add_term(Monomial(v), C(1));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    int degree() const {
        // max over terms; -1 for the zero polynomial
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(Monomial m, C c) {
        if (coeff_is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(std::move(m), std::move(c));
        if (!inserted) {
            it->second = it->second + c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, C(0) - c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& l, const Polynomial& r) {
        return l.terms_ == r.terms_;
    }
    friend bool operator!=(const Polynomial& l, const Polynomial& r) { return !(l == r); }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    // Terms of total degree exactly one.
    Polynomial linear_part() const {
        Polynomial r;
        for (const auto& [m, c] : terms_)
            if (m.degree() == 1) r.terms_.emplace(m, c);
        return r;
    }

    C linear_coefficient(Var v) const { return coefficient(Monomial(v)); }

    bool contains_var(Var v) const {
        for (const auto& [m, c] : terms_)
            if (m.exponent_of(v) > 0) return true;
        return false;
    }

    std::vector<Var> variables() const {
        std::vector<std::uint32_t> keys;
        for (const auto& [m, c] : terms_)
            for (const auto& [k, e] : m.entries()) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<Var> out;
        out.reserve(keys.size());
        for (auto k : keys) out.push_back(Var::from_key(k));
        return out;
    }

    // Fully evaluate under a total assignment Var -> F.
    template <class F, class Assign>
    F evaluate(Assign&& assign) const {
        F acc = F(0);
        for (const auto& [m, c] : terms_) {
            F t = CoeffConv<F>::from(c);
            for (const auto& [k, e] : m.entries()) {
                F val = assign(Var::from_key(k));
                for (int i = 0; i < e; ++i) t = t * val;
            }
            acc = acc + t;
        }
        return acc;
    }

    // Partially substitute: variables with an assigned value are replaced,
    // the rest remain symbolic.  Coefficients move to the ring F.
    template <class F, class Lookup>
    Polynomial<F> substitute(Lookup&& lookup) const {
        Polynomial<F> out;
        for (const auto& [m, c] : terms_) {
            F scalar = CoeffConv<F>::from(c);
            Monomial rest;
            bool dead = false;
            for (const auto& [k, e] : m.entries()) {
                Var v = Var::from_key(k);
                std::optional<F> val = lookup(v);
                if (val) {
                    for (int i = 0; i < e; ++i) scalar = scalar * (*val);
                    if (coeff_is_zero(scalar)) {
                        dead = true;
                        break;
                    }
                } else {
                    rest = rest * Monomial(v).pow(e);
                }
            }
            if (!dead) out.add_term(std::move(rest), std::move(scalar));
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            C a = c;
            bool neg = a < C(0);
            if (neg) a = C(0) - a;
            if (first) {
                if (neg) os << '-';
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            if (m.is_one()) {
                os << a;
            } else {
                if (!(a == C(1))) os << a << '*';
                os << m.str();
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        return os << p.str();
    }

private:
    Terms terms_;
};

using PolyZ = Polynomial<Int>;
using PolyQ = Polynomial<Rat>;
using PolyF = Polynomial<Fp61>;

// ---------------------------------------------------------------------------
// Parsing (integer coefficients)
// ---------------------------------------------------------------------------
//
// Grammar:  expr   := ['-'] term (('+'|'-') term)*
//           term   := factor ('*' factor)*
//           factor := INT | VAR ['^' INT]
//           VAR    := ('x'|'y') '[' INT ',' INT ']'

class PolyParser {
public:
    explicit PolyParser(std::string s) : s_(std::move(s)) {}

    PolyZ parse() {
        PolyZ p = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("polynomial parse error at offset " +
                                 std::to_string(pos_) + ": " + msg);
    }
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n'))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    Int parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
            fail("expected integer");
        return Int(s_.substr(start, pos_ - start));
    }
    Var parse_var() {
        char c = peek();
        VarKind kind = c == 'x' ? VarKind::X : VarKind::Y;
        ++pos_;
        if (!eat('[')) fail("expected '['");
        Int a = parse_int();
        if (!eat(',')) fail("expected ','");
        Int b = parse_int();
        if (!eat(']')) fail("expected ']'");
        return Var{kind, static_cast<int>(a), static_cast<int>(b)};
    }
    PolyZ parse_factor() {
        char c = peek();
        if (c == 'x' || c == 'y') {
            Var v = parse_var();
            int e = 1;
            if (eat('^')) e = static_cast<int>(parse_int());
            if (e < 0) fail("negative exponent");
            PolyZ p;
            p.add_term(Monomial(v).pow(e), Int(1));
            return p;
        }
        if (c == '(') {
            eat('(');
            PolyZ p = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return PolyZ::constant(parse_int());
        fail("expected factor");
    }
    PolyZ parse_term() {
        PolyZ p = parse_factor();
        while (eat('*')) p *= parse_factor();
        return p;
    }
    PolyZ parse_expr() {
        bool neg = false;
        skip_ws();
        if (peek() == '-') {
            eat('-');
            neg = true;
        } else if (peek() == '+') {
            eat('+');
        }
        PolyZ p = parse_term();
        if (neg) p = -p;
        for (;;) {
            char c = peek();
            if (c == '+') {
                eat('+');
                p += parse_term();
            } else if (c == '-') {
                eat('-');
                p -= parse_term();
            } else {
                break;
            }
        }
        return p;
    }
};

inline PolyZ parse_poly(const std::string& s) { return PolyParser(s).parse(); }

// Replace one variable by a whole polynomial, expanding powers exactly.
template <class C>
inline Polynomial<C> substitute_var(const Polynomial<C>& p, Var v, const Polynomial<C>& repl) {
    Polynomial<C> out;
    std::vector<Polynomial<C>> powers{Polynomial<C>::constant(C(1))}; // repl^0, repl^1, ...
    for (const auto& [m, c] : p.terms()) {
        int e = m.exponent_of(v);
        if (e == 0) {
            out.add_term(m, c);
            continue;
        }
        auto rest = m.divide(Monomial(v).pow(e));
        Polynomial<C> factor;
        factor.add_term(*rest, c);
        while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * repl);
        out += factor * powers[static_cast<std::size_t>(e)];
    }
    return out;
}

// Solve a*v + b = 0 for v given a polynomial that is linear in v and has no
// other unassigned variables.  Returns nullopt when the coefficient of v is
// not a nonzero constant or the residual is not constant.
template <class F>
inline std::optional<F> solve_linear(const Polynomial<F>& p, Var v) {
    F a = F(0), b = F(0);
    for (const auto& [m, c] : p.terms()) {
        int e = m.exponent_of(v);
        if (e == 0) {
            if (!m.is_one()) return std::nullopt;
            b = b + c;
        } else if (e == 1) {
            if (m.degree() != 1) return std::nullopt;
            a = a + c;
        } else {
            return std::nullopt;
        }
    }
    if (coeff_is_zero(a)) return std::nullopt;
    return (F(0) - b) / a;
}

} // namespace kqg

#endif // KQG_POLY_HPP
