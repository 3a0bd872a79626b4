#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cylsat {

/// Exact rational scalar. All symbolic paths run on these; doubles appear
/// only in oracles, diagnostics and the Galerkin integrator.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q". Used by configs so lengths like "17/2" stay exact.
inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// A rational multiple of a nonnegative power of pi. pi is never expanded
/// numerically on exact paths; the exponent is bookkeeping.
struct PiRat {
    Rat value;
    int pi_pow = 0;

    PiRat() = default;
    PiRat(Rat v, int p) : value(std::move(v)), pi_pow(p) { normalize(); }

    void normalize() {
        if (is_zero(value)) pi_pow = 0;
    }

    bool zero() const { return is_zero(value); }

    PiRat& operator+=(const PiRat& o) {
        if (o.zero()) return *this;
        if (zero()) { *this = o; return *this; }
        if (pi_pow != o.pi_pow)
            throw std::logic_error("PiRat addition with mismatched pi powers");
        value += o.value;
        normalize();
        return *this;
    }

    PiRat operator*(const PiRat& o) const { return PiRat(value * o.value, pi_pow + o.pi_pow); }
    PiRat operator-() const { return PiRat(-value, pi_pow); }

    bool operator==(const PiRat& o) const {
        if (zero() && o.zero()) return true;
        return pi_pow == o.pi_pow && value == o.value;
    }

    double to_double() const;

    std::string str() const {
        if (pi_pow == 0) return rat_str(value);
        std::string s = rat_str(value) + "*pi";
        if (pi_pow != 1) s += "^" + std::to_string(pi_pow);
        return s;
    }
};

inline double pi_double() { return 3.14159265358979323846264338327950288; }

inline double PiRat::to_double() const {
    double v = rat_double(value);
    for (int i = 0; i < pi_pow; ++i) v *= pi_double();
    return v;
}

}  // namespace cylsat
