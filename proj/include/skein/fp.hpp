#pragma once

#include <cstdint>

#include <skein/scalar.hpp>

namespace skein::detail {

/// Arithmetic in the prime field F_p, p = 2^61 - 1. Specializing s at a
/// rational sample and reducing the coefficient field mod p is a flat
/// degeneration: quotient dimensions can only grow, so every per-sample
/// figure is an upper bound for the generic one and the min over samples is
/// the best estimate, exact outside a negligible bad set.
struct Fp {
    static constexpr uint64_t P = 2305843009213693951ull; // 2^61 - 1
    uint64_t v = 0;
    static uint64_t mul(uint64_t a, uint64_t b) {
        return (uint64_t)((unsigned __int128)a * b % P);
    }
    static uint64_t pinv(uint64_t a) {
        uint64_t r = 1, e = P - 2;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    static Fp from_rat(const Rat& x) {
        uint64_t d = mpz_fdiv_ui(x.get_den().get_mpz_t(), P);
        if (d == 0) throw PoleError("Fp: denominator divisible by the field prime");
        return Fp{mul(mpz_fdiv_ui(x.get_num().get_mpz_t(), P), pinv(d))};
    }
    bool is_zero() const { return v == 0; }
    Fp operator+(Fp o) const { uint64_t s = v + o.v; return Fp{s >= P ? s - P : s}; }
    Fp operator-(Fp o) const { return Fp{v >= o.v ? v - o.v : v + P - o.v}; }
    Fp operator*(Fp o) const { return Fp{mul(v, o.v)}; }
    Fp operator/(Fp o) const { return Fp{mul(v, pinv(o.v))}; }
    Fp& operator+=(Fp o) { *this = *this + o; return *this; }
    Fp& operator-=(Fp o) { *this = *this - o; return *this; }
};

} // namespace skein::detail
