#pragma once

#include <cstdint>
#include <stdexcept>

#include "cylsat/rational.hpp"

namespace cylsat {

/// Arithmetic in GF(p) with p = 2^61 - 1. Rank decisions made here can only
/// understate the rational rank (a nonzero residue certifies a nonzero
/// rational), which is the safe direction for inclusion verdicts.
struct Fp61 {
    static constexpr uint64_t P = (uint64_t(1) << 61) - 1;

    uint64_t v = 0;

    Fp61() = default;
    explicit Fp61(uint64_t x) : v(x % P) {}

    static Fp61 from_int(long long x) {
        long long m = x % (long long)P;
        if (m < 0) m += (long long)P;
        Fp61 r;
        r.v = (uint64_t)m;
        return r;
    }

    static Fp61 from_rat(const Rat& r) {
        Fp61 num = from_mpz(r.get_num());
        Fp61 den = from_mpz(r.get_den());
        if (den.v == 0) throw std::logic_error("Fp61: denominator divisible by p");
        return num * den.inv();
    }

    static Fp61 from_mpz(const mpz_class& z) {
        mpz_class m = z % (mpz_class)P;
        if (m < 0) m += (mpz_class)P;
        Fp61 r;
        r.v = mpz_get_ui(m.get_mpz_t());
        return r;
    }

    bool zero() const { return v == 0; }

    Fp61 operator+(Fp61 o) const {
        uint64_t s = v + o.v;
        if (s >= P) s -= P;
        Fp61 r; r.v = s; return r;
    }
    Fp61 operator-(Fp61 o) const {
        uint64_t s = v >= o.v ? v - o.v : v + P - o.v;
        Fp61 r; r.v = s; return r;
    }
    Fp61 operator-() const {
        Fp61 r; r.v = v == 0 ? 0 : P - v; return r;
    }
    Fp61 operator*(Fp61 o) const {
        __uint128_t m = (__uint128_t)v * o.v;
        uint64_t lo = (uint64_t)(m & P);
        uint64_t hi = (uint64_t)(m >> 61);
        uint64_t s = lo + hi;
        if (s >= P) s -= P;
        Fp61 r; r.v = s; return r;
    }
    Fp61& operator+=(Fp61 o) { *this = *this + o; return *this; }
    Fp61& operator-=(Fp61 o) { *this = *this - o; return *this; }
    Fp61& operator*=(Fp61 o) { *this = *this * o; return *this; }

    Fp61 pow(uint64_t e) const {
        Fp61 base = *this, acc; acc.v = 1;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
    Fp61 inv() const {
        if (v == 0) throw std::logic_error("Fp61: inverse of zero");
        return pow(P - 2);
    }
    Fp61 operator/(Fp61 o) const { return *this * o.inv(); }

    bool operator==(Fp61 o) const { return v == o.v; }
};

}  // namespace cylsat
