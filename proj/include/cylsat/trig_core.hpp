#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cylsat/fp61.hpp"
#include "cylsat/rational.hpp"

namespace cylsat {

// ---------------------------------------------------------------------------
// Ring abstraction: the symbolic pipeline runs either over exact rationals or
// over GF(p) images of them (span-engine fast pre-filter). Same code path, so
// the mod-p image of a computation is the computation mod p by construction.
// ---------------------------------------------------------------------------

template <class R>
struct RingOps;

template <>
struct RingOps<Rat> {
    static Rat from_int(long v) { return Rat(v); }
    static Rat from_rat(const Rat& r) { return r; }
    static bool is_zero(const Rat& r) { return sgn(r) == 0; }
};

template <>
struct RingOps<Fp61> {
    static Fp61 from_int(long v) { return Fp61::from_int(v); }
    static Fp61 from_rat(const Rat& r) { return Fp61::from_rat(r); }
    static bool is_zero(const Fp61& r) { return r.zero(); }
};

enum class Factor : uint8_t { Sin = 0, Cos = 1 };

using Index3 = std::array<int, 3>;
using Factors3 = std::array<Factor, 3>;

inline int count_zeros(const Index3& k) {
    return int(k[0] == 0) + int(k[1] == 0) + int(k[2] == 0);
}

template <class R>
struct Lengths3 {
    std::array<R, 3> L;
};

/// One separable term c * pi^p * T1(k1 pi x1/L1) T2(k2 pi x2/L2) T3(k3 pi x3/L3)
/// with Ti in {sin, cos}. Indices are nonnegative in canonical form; a sin
/// factor with zero index makes the term vanish and is never stored.
template <class R>
struct TrigTerm {
    Factors3 f;
    Index3 k;
    int pi_pow = 0;
    R coeff{};
};

namespace detail {

inline bool key_less(const Factors3& fa, const Index3& ka, int pa,
                     const Factors3& fb, const Index3& kb, int pb) {
    if (ka != kb) return ka < kb;
    if (fa != fb) return fa < fb;
    return pa < pb;
}

}  // namespace detail

template <class R>
class TrigScalarT {
  public:
    using Term = TrigTerm<R>;

    TrigScalarT() = default;

    static TrigScalarT zero() { return {}; }

    static TrigScalarT constant(R c) {
        TrigScalarT s;
        s.add_term({Factor::Cos, Factor::Cos, Factor::Cos}, {0, 0, 0}, 0, std::move(c));
        s.finalize();
        return s;
    }

    static TrigScalarT monomial(Factors3 f, Index3 k, int pi_pow, R coeff) {
        TrigScalarT s;
        s.add_term(f, k, pi_pow, std::move(coeff));
        s.finalize();
        return s;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Accepts raw (possibly negative-index) data, folds sin(-x) = -sin(x),
    /// cos(-x) = cos(x) and drops sin(0) terms. finalize() must follow.
    void add_term(Factors3 f, Index3 k, int pi_pow, R coeff) {
        if (RingOps<R>::is_zero(coeff)) return;
        bool negate = false;
        for (int i = 0; i < 3; ++i) {
            if (k[i] < 0) {
                k[i] = -k[i];
                if (f[i] == Factor::Sin) negate = !negate;
            }
            if (k[i] == 0 && f[i] == Factor::Sin) return;  // identically zero
        }
        Term t;
        t.f = f;
        t.k = k;
        t.pi_pow = pi_pow;
        t.coeff = negate ? R(-coeff) : std::move(coeff);
        terms_.push_back(std::move(t));
    }

    void add_scaled(const TrigScalarT& o, const R& c, int dpi = 0) {
        for (const Term& t : o.terms_) terms_.push_back({t.f, t.k, t.pi_pow + dpi, R(t.coeff * c)});
    }

    /// Sort by (k, factors, pi) and merge coefficients; canonical form.
    void finalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
            return detail::key_less(a.f, a.k, a.pi_pow, b.f, b.k, b.pi_pow);
        });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            Term acc = std::move(terms_[i]);
            std::size_t j = i + 1;
            while (j < terms_.size() && terms_[j].k == acc.k && terms_[j].f == acc.f &&
                   terms_[j].pi_pow == acc.pi_pow) {
                acc.coeff += terms_[j].coeff;
                ++j;
            }
            if (!RingOps<R>::is_zero(acc.coeff)) terms_[out++] = std::move(acc);
            i = j;
        }
        terms_.resize(out);
    }

    TrigScalarT operator+(const TrigScalarT& o) const {
        TrigScalarT r = *this;
        r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
        r.finalize();
        return r;
    }

    TrigScalarT operator-(const TrigScalarT& o) const {
        TrigScalarT r = *this;
        for (const Term& t : o.terms_) r.terms_.push_back({t.f, t.k, t.pi_pow, R(-t.coeff)});
        r.finalize();
        return r;
    }

    TrigScalarT operator-() const {
        TrigScalarT r;
        for (const Term& t : terms_) r.terms_.push_back({t.f, t.k, t.pi_pow, R(-t.coeff)});
        return r;
    }

    TrigScalarT scaled(const R& c, int dpi = 0) const {
        TrigScalarT r;
        if (RingOps<R>::is_zero(c)) return r;
        for (const Term& t : terms_) r.terms_.push_back({t.f, t.k, t.pi_pow + dpi, R(t.coeff * c)});
        return r;
    }

    bool operator==(const TrigScalarT& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const Term &a = terms_[i], &b = o.terms_[i];
            if (a.k != b.k || a.f != b.f || a.pi_pow != b.pi_pow || !(a.coeff == b.coeff))
                return false;
        }
        return true;
    }

  private:
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Product-to-sum multiplication.
//   sin a sin b = (cos(a-b) - cos(a+b))/2      sin a cos b = (sin(a+b) + sin(a-b))/2
//   cos a cos b = (cos(a-b) + cos(a+b))/2      cos a sin b = (sin(a+b) - sin(a-b))/2
// ---------------------------------------------------------------------------

template <class R>
TrigScalarT<R> mono_mul(const TrigScalarT<R>& a, const TrigScalarT<R>& b) {
    struct Half {
        Factor f;
        int k;
        int sign;  // +1 or -1
    };
    TrigScalarT<R> out;
    const R half = RingOps<R>::from_rat(rat(1, 2));
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            std::array<std::array<Half, 2>, 3> ax;
            for (int i = 0; i < 3; ++i) {
                const int s = ta.k[i] + tb.k[i];
                const int d = ta.k[i] - tb.k[i];
                const bool sa = ta.f[i] == Factor::Sin;
                const bool sb = tb.f[i] == Factor::Sin;
                if (sa && sb)
                    ax[i] = {Half{Factor::Cos, d, +1}, Half{Factor::Cos, s, -1}};
                else if (!sa && !sb)
                    ax[i] = {Half{Factor::Cos, d, +1}, Half{Factor::Cos, s, +1}};
                else if (sa && !sb)
                    ax[i] = {Half{Factor::Sin, s, +1}, Half{Factor::Sin, d, +1}};
                else
                    ax[i] = {Half{Factor::Sin, s, +1}, Half{Factor::Sin, d, -1}};
            }
            R base = ta.coeff * tb.coeff * half * half * half;
            const int pi_pow = ta.pi_pow + tb.pi_pow;
            for (int c0 = 0; c0 < 2; ++c0)
                for (int c1 = 0; c1 < 2; ++c1)
                    for (int c2 = 0; c2 < 2; ++c2) {
                        const Half &h0 = ax[0][c0], &h1 = ax[1][c1], &h2 = ax[2][c2];
                        const int sign = h0.sign * h1.sign * h2.sign;
                        out.add_term({h0.f, h1.f, h2.f}, {h0.k, h1.k, h2.k}, pi_pow,
                                     sign > 0 ? base : R(-base));
                    }
        }
    }
    out.finalize();
    return out;
}

/// Exact partial derivative; every produced term gains one power of pi.
template <class R>
TrigScalarT<R> diff(const TrigScalarT<R>& s, int axis, const Lengths3<R>& L) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("diff: axis out of range");
    TrigScalarT<R> out;
    for (const auto& t : s.terms()) {
        if (t.k[axis] == 0) continue;  // cos(0) factor is constant in x_axis
        R rate = RingOps<R>::from_int(t.k[axis]) / L.L[axis];
        Factors3 f = t.f;
        R c = t.coeff * rate;
        if (t.f[axis] == Factor::Sin) {
            f[axis] = Factor::Cos;
        } else {
            f[axis] = Factor::Sin;
            c = -c;
        }
        out.add_term(f, t.k, t.pi_pow + 1, std::move(c));
    }
    out.finalize();
    return out;
}

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

template <class R>
struct TrigVectorFieldT {
    std::array<TrigScalarT<R>, 3> comp;

    bool is_zero() const { return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero(); }

    TrigVectorFieldT operator+(const TrigVectorFieldT& o) const {
        return {comp[0] + o.comp[0], comp[1] + o.comp[1], comp[2] + o.comp[2]};
    }
    TrigVectorFieldT operator-(const TrigVectorFieldT& o) const {
        return {comp[0] - o.comp[0], comp[1] - o.comp[1], comp[2] - o.comp[2]};
    }
    TrigVectorFieldT scaled(const R& c, int dpi = 0) const {
        return {comp[0].scaled(c, dpi), comp[1].scaled(c, dpi), comp[2].scaled(c, dpi)};
    }
    bool operator==(const TrigVectorFieldT& o) const { return comp == o.comp; }
};

template <class R>
TrigVectorFieldT<R> gradient(const TrigScalarT<R>& s, const Lengths3<R>& L) {
    return {diff(s, 0, L), diff(s, 1, L), diff(s, 2, L)};
}

template <class R>
TrigScalarT<R> divergence(const TrigVectorFieldT<R>& u, const Lengths3<R>& L) {
    return diff(u.comp[0], 0, L) + diff(u.comp[1], 1, L) + diff(u.comp[2], 2, L);
}

template <class R>
TrigVectorFieldT<R> curl(const TrigVectorFieldT<R>& u, const Lengths3<R>& L) {
    return {diff(u.comp[2], 1, L) - diff(u.comp[1], 2, L),
            diff(u.comp[0], 2, L) - diff(u.comp[2], 0, L),
            diff(u.comp[1], 0, L) - diff(u.comp[0], 1, L)};
}

/// (u . grad) v, componentwise u . grad v_j.
template <class R>
TrigVectorFieldT<R> advect(const TrigVectorFieldT<R>& u, const TrigVectorFieldT<R>& v,
                           const Lengths3<R>& L) {
    TrigVectorFieldT<R> out;
    for (int j = 0; j < 3; ++j) {
        TrigScalarT<R> acc;
        for (int i = 0; i < 3; ++i) {
            if (u.comp[i].is_zero()) continue;
            TrigScalarT<R> dv = diff(v.comp[j], i, L);
            if (dv.is_zero()) continue;
            acc.add_scaled(mono_mul(u.comp[i], dv), RingOps<R>::from_int(1));
        }
        acc.finalize();
        out.comp[j] = std::move(acc);
    }
    return out;
}

template <class R>
TrigScalarT<R> laplacian(const TrigScalarT<R>& s, const Lengths3<R>& L) {
    TrigScalarT<R> acc;
    for (int i = 0; i < 3; ++i) acc.add_scaled(diff(diff(s, i, L), i, L), RingOps<R>::from_int(1));
    acc.finalize();
    return acc;
}

// ---------------------------------------------------------------------------
// L2 inner product over (0,L1) x (0,L2) x (0,2L3).
//
// 1D tables: sin-sin and cos-cos are diagonal, zero-index cos pairs give the
// full length. sin-cos pairs integrate to zero for every case this engine can
// reach (components of the Y/Z shape family are parity-pure per axis, and the
// x3 cell is a full period); the one case where the table would be wrong on a
// half-period axis (index sum odd) throws instead of lying.
// ---------------------------------------------------------------------------

struct InnerTablePi {};  // tag: result carries pi_pow of the operands

template <class R>
R integral_1d(int axis, Factor fa, int ka, Factor fb, int kb, const Lengths3<R>& L,
              bool* nonzero) {
    *nonzero = false;
    const bool full_period = axis == 2;  // x3 lives on a circle of length 2 L3
    if (fa == fb) {
        if (ka != kb) return R{};
        *nonzero = true;
        if (fa == Factor::Cos && ka == 0)
            return full_period ? R(L.L[2] + L.L[2]) : L.L[axis];
        // sin with ka == 0 cannot appear in canonical form
        if (full_period) return L.L[2];
        return L.L[axis] / RingOps<R>::from_int(2);
    }
    // mixed sin-cos
    if (full_period) return R{};
    const int ks = fa == Factor::Sin ? ka : kb;
    const int kc = fa == Factor::Sin ? kb : ka;
    if (((ks + kc) & 1) != 0)
        throw std::logic_error(
            "inner(): sin-cos pairing with odd index sum on a half-period axis is outside "
            "the orthogonal-family domain");
    return R{};
}

/// Inner product of two scalars as (R value, pi power). Throws on mixed pi
/// powers only if two nonzero contributions disagree.
template <class R>
std::pair<R, int> inner_scalar(const TrigScalarT<R>& a, const TrigScalarT<R>& b,
                               const Lengths3<R>& L) {
    R total{};
    int pi_pow = 0;
    bool have = false;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            R prod = RingOps<R>::from_int(1);
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i) {
                bool nz = false;
                R f = integral_1d(i, ta.f[i], ta.k[i], tb.f[i], tb.k[i], L, &nz);
                if (!nz) { ok = false; break; }
                prod = prod * f;
            }
            if (!ok) continue;
            R val = ta.coeff * tb.coeff * prod;
            if (RingOps<R>::is_zero(val)) continue;
            const int p = ta.pi_pow + tb.pi_pow;
            if (!have) {
                pi_pow = p;
                have = true;
            } else if (p != pi_pow) {
                throw std::logic_error("inner(): mixed pi powers in nonzero contributions");
            }
            total += val;
        }
    }
    if (RingOps<R>::is_zero(total)) return {R{}, 0};
    return {total, pi_pow};
}

template <class R>
std::pair<R, int> inner_field(const TrigVectorFieldT<R>& a, const TrigVectorFieldT<R>& b,
                              const Lengths3<R>& L) {
    R total{};
    int pi_pow = 0;
    bool have = false;
    for (int c = 0; c < 3; ++c) {
        auto [v, p] = inner_scalar(a.comp[c], b.comp[c], L);
        if (RingOps<R>::is_zero(v)) continue;
        if (!have) {
            pi_pow = p;
            have = true;
        } else if (p != pi_pow) {
            throw std::logic_error("inner(): mixed pi powers across components");
        }
        total += v;
    }
    if (RingOps<R>::is_zero(total)) return {R{}, 0};
    return {total, pi_pow};
}

}  // namespace cylsat
