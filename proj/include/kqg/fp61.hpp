#ifndef KQG_FP61_HPP
#define KQG_FP61_HPP

// Arithmetic in the prime field F_q with q = 2^61 - 1 (a Mersenne prime).
// Elements are stored as canonical representatives in [0, q).

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <ostream>

namespace kqg {

struct Fp61 {
    static constexpr std::uint64_t q = 2305843009213693951ULL; // 2^61 - 1

    std::uint64_t v = 0;

    constexpr Fp61() = default;
    constexpr explicit Fp61(std::uint64_t raw) : v(raw % q) {}

    static constexpr Fp61 from_int(long long x) {
        long long r = x % static_cast<long long>(q);
        if (r < 0) r += static_cast<long long>(q);
        return Fp61(static_cast<std::uint64_t>(r));
    }

    constexpr bool is_zero() const { return v == 0; }

    friend constexpr bool operator==(Fp61 a, Fp61 b) { return a.v == b.v; }
    friend constexpr bool operator!=(Fp61 a, Fp61 b) { return a.v != b.v; }

    friend constexpr Fp61 operator+(Fp61 a, Fp61 b) {
        std::uint64_t s = a.v + b.v; // < 2^62, no overflow
        if (s >= q) s -= q;
        return Fp61{s, raw_tag{}};
    }
    friend constexpr Fp61 operator-(Fp61 a, Fp61 b) {
        std::uint64_t s = a.v >= b.v ? a.v - b.v : a.v + q - b.v;
        return Fp61{s, raw_tag{}};
    }
    friend constexpr Fp61 operator-(Fp61 a) {
        return Fp61{a.v == 0 ? 0 : q - a.v, raw_tag{}};
    }
    friend constexpr Fp61 operator*(Fp61 a, Fp61 b) {
        unsigned __int128 p = static_cast<unsigned __int128>(a.v) * b.v;
        // Mersenne reduction: p = hi*2^61 + lo with 2^61 = 1 (mod q).
        std::uint64_t lo = static_cast<std::uint64_t>(p) & q;
        std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
        std::uint64_t s = lo + hi;
        if (s >= q) s -= q;
        return Fp61{s, raw_tag{}};
    }

    Fp61& operator+=(Fp61 o) { return *this = *this + o; }
    Fp61& operator-=(Fp61 o) { return *this = *this - o; }
    Fp61& operator*=(Fp61 o) { return *this = *this * o; }

    Fp61 pow(std::uint64_t e) const {
        Fp61 base = *this, acc = Fp61{1, raw_tag{}};
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Fp61 inv() const {
        assert(v != 0 && "division by zero in F_q");
        return pow(q - 2);
    }

    friend Fp61 operator/(Fp61 a, Fp61 b) { return a * b.inv(); }

    friend std::ostream& operator<<(std::ostream& os, Fp61 a) { return os << a.v; }

private:
    struct raw_tag {};
    constexpr Fp61(std::uint64_t raw, raw_tag) : v(raw) {}
};

} // namespace kqg

#endif // KQG_FP61_HPP
