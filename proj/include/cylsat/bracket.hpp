#pragma once

#include "cylsat/projector.hpp"

namespace cylsat {

struct SignTriple {
    int s1 = 1, s2 = 1, s3 = 1;  // each +1 or -1
};

/// beta^{s1 s2 s3}_{w,m} = (pi/8)(s1 w1 m1/L1 + s2 w2 m2/L2 + s3 w3 m3/L3).
PiRat beta(const WVector& w, const Index3& m, const SignTriple& s, const DomainLengths& L);

enum class Shape : uint8_t { YShape = 0, ZShape = 1 };

/// One pure-shape slice of a field at a single mode index: for the Z shape
/// (z1 S1 C2 S3, z2 C1 S2 S3, z3 C1 C2 C3), for the Y shape
/// (z1 S1 C2 C3, z2 C1 S2 C3, z3 C1 C2 S3).
struct ShapeTerm {
    Shape shape = Shape::ZShape;
    Index3 k{0, 0, 0};
    std::array<Rat, 3> z{};
    int pi_pow = 0;
};

TrigVectorField realize_shape(const ShapeTerm& t);

/// Split a field of the closed Y/Z shape family into per-index shape terms.
/// Throws if a monomial matches neither shape pattern.
std::vector<ShapeTerm> decompose_shapes(const TrigVectorField& u);

struct BracketResult {
    EigenCoords projected;
    std::vector<ShapeTerm> unprojected_terms;
};

/// Symmetrized convection bracket B(a,b) + B(b,a) with B(u,v) = Pi((u.grad)v),
/// via symbolic advection and projection. Symmetric in (a,b) by construction.
BracketResult bracket_generic(const Eigenfunction& a, const Eigenfunction& b, const Projector& P);

/// The closed-form eight-term-per-component expansion of
/// (Y^k.grad) Z^m + (Z^m.grad) Y^k, grouped into Z-shape terms by result
/// index, z-vectors assembled from beta values. (k,wk) must be a valid Y
/// datum and (m,wm) a valid Z datum.
BracketResult yz_mix_closed_form(const Index3& k, const WVector& wk, const Index3& m,
                                 const WVector& wm, const Projector& P);

/// The unprojected closed-form expansion alone (no universe needed).
std::vector<ShapeTerm> yz_mix_terms(const Index3& k, const WVector& wk, const Index3& m,
                                    const WVector& wm, const DomainLengths& L);

Rat det3(const WVector& a, const WVector& b, const WVector& c);

/// True iff {alpha, gamma, k} is linearly independent. This is the printed
/// criterion the step scripts replay; it is close to, but not the same as,
/// the projected-span condition (see projected_pair_independent).
bool check_lin_indep_pair(const WVector& alpha, const WVector& gamma, const Index3& k,
                          const DomainLengths& L);

/// True iff at least one of {alpha,gamma,k}, {alpha,delta,k}, {gamma,delta,k}
/// is linearly independent (printed criterion).
bool check_lin_indep_triple(const WVector& alpha, const WVector& gamma, const WVector& delta,
                            const Index3& k, const DomainLengths& L);

/// Direction of the Z-shape slice at k annihilated by the projection: the
/// gradient ray (k1/L1, k2/L2, -k3/L3). Z-shape vectors project to the same
/// eigen-coordinates iff they differ by a multiple of this vector.
WVector kernel_vector(const Index3& k, const DomainLengths& L);

/// Authoritative pair check: {project(Z^k_alpha), project(Z^k_gamma)} spans
/// the two-dimensional eigenspace at k iff det(alpha | gamma | kernel) != 0.
/// Provably equivalent to the brute-force projector rank.
bool projected_pair_independent(const WVector& alpha, const WVector& gamma, const Index3& k,
                                const DomainLengths& L);

bool projected_triple_independent(const WVector& alpha, const WVector& gamma,
                                  const WVector& delta, const Index3& k, const DomainLengths& L);

/// Brute-force oracle for projected_pair_independent, computed through the
/// projector itself.
bool projected_pair_spans(const WVector& alpha, const WVector& gamma, const Index3& k,
                          const Projector& P);

/// Projected coordinates of the symmetrized bracket of two universe elements,
/// through the full symbolic pipeline. Reference implementation; the chain
/// uses eigen_pair_bracket, which must agree with this exactly.
template <class R>
std::vector<std::pair<int, PCoeff<R>>> pair_bracket(const ProjectorT<R>& P, int pos_a, int pos_b) {
    const auto& lr = P.ring_lengths();
    const auto& fa = P.field(pos_a);
    const auto& fb = P.field(pos_b);
    return P.project(advect(fa, fb, lr) + advect(fb, fa, lr));
}

/// Allocation-light pair bracket specialized to eigenfunction operands: both
/// fields carry one monomial per component, so the advection expands into at
/// most eight sign combinations per term, and projection onto the orthogonal
/// system reduces to Euclidean slot arithmetic (the alive-slot 1D integrals
/// of a shape coincide, so the Gram factors cancel).
template <class R>
std::vector<std::pair<int, PCoeff<R>>> eigen_pair_bracket(const ProjectorT<R>& P, int pos_a,
                                                          int pos_b) {
    const Universe& uni = P.universe();
    const Lengths3<R>& L = P.ring_lengths();
    struct Op {
        Family fam;
        Index3 k;
        const std::array<R, 3>* zeta;  // slot vector (w1, w2, +-w3)
    };
    const Op A{uni.id(pos_a).family, uni.id(pos_a).k, &P.slot_vector(pos_a)};
    const Op B{uni.id(pos_b).family, uni.id(pos_b).k, &P.slot_vector(pos_b)};

    // Factor pattern of component c of a family field at axis i.
    auto is_sin = [](Family f, int c, int i) {
        return f == Family::Y ? i == c : (i == c) != (i == 2);
    };

    struct Bucket {
        Index3 n;
        Shape shape;
        std::array<R, 3> z{};
    };
    std::array<Bucket, 24> buckets;
    int nbuckets = 0;

    const R eighth = RingOps<R>::from_rat(rat(1, 8));
    for (int order = 0; order < 2; ++order) {
        const Op& U = order == 0 ? A : B;
        const Op& V = order == 0 ? B : A;
        for (int j = 0; j < 3; ++j) {  // output component: U . grad V_j
            if (RingOps<R>::is_zero((*V.zeta)[j])) continue;
            for (int i = 0; i < 3; ++i) {
                if (RingOps<R>::is_zero((*U.zeta)[i]) || V.k[i] == 0) continue;
                // d/dx_i of V_j: factor at axis i flips; sin -> +cos, cos -> -sin
                const bool v_sin_i = is_sin(V.fam, j, i);
                R coeff = (*U.zeta)[i] * (*V.zeta)[j] * (RingOps<R>::from_int(V.k[i]) / L.L[i]) *
                          eighth;
                if (!v_sin_i) coeff = -coeff;
                for (int s_bits = 0; s_bits < 8; ++s_bits) {
                    R val = coeff;
                    Index3 n;
                    Factors3 f;
                    bool dead = false, negate = false;
                    for (int a = 0; a < 3 && !dead; ++a) {
                        const int s = (s_bits >> a) & 1 ? 1 : -1;
                        const bool u_sin = is_sin(U.fam, i, a);
                        bool dv_sin = is_sin(V.fam, j, a);
                        if (a == i) dv_sin = !dv_sin;  // derivative flipped this axis
                        // product-to-sum: sign and resulting factor type
                        bool out_sin;
                        int sgn = 1;
                        if (u_sin && dv_sin) {
                            out_sin = false;
                            sgn = s > 0 ? -1 : 1;
                        } else if (!u_sin && !dv_sin) {
                            out_sin = false;
                        } else if (u_sin) {  // sin * cos
                            out_sin = true;
                        } else {  // cos * sin
                            out_sin = true;
                            sgn = s > 0 ? 1 : -1;
                        }
                        int idx = U.k[a] + s * V.k[a];
                        if (idx < 0) {
                            idx = -idx;
                            if (out_sin) negate = !negate;
                        }
                        if (idx == 0 && out_sin) {
                            dead = true;
                            break;
                        }
                        if (sgn < 0) negate = !negate;
                        n[a] = idx;
                        f[a] = out_sin ? Factor::Sin : Factor::Cos;
                    }
                    if (dead) continue;
                    if (n[0] > uni.cap() || n[1] > uni.cap() || n[2] > uni.cap())
                        throw UniverseOverflowError(n);  // never truncate silently
                    if (negate) val = -val;
                    // classify the (component, pattern) into a shape slot
                    const bool y_like = f[0] == (j == 0 ? Factor::Sin : Factor::Cos) &&
                                        f[1] == (j == 1 ? Factor::Sin : Factor::Cos) &&
                                        f[2] == (j == 2 ? Factor::Sin : Factor::Cos);
                    const Shape sh = y_like ? Shape::YShape : Shape::ZShape;
                    int b = 0;
                    for (; b < nbuckets; ++b)
                        if (buckets[std::size_t(b)].n == n && buckets[std::size_t(b)].shape == sh)
                            break;
                    if (b == nbuckets) {
                        buckets[std::size_t(nbuckets)].n = n;
                        buckets[std::size_t(nbuckets)].shape = sh;
                        buckets[std::size_t(nbuckets)].z = {};
                        ++nbuckets;
                    }
                    buckets[std::size_t(b)].z[j] += val;
                }
            }
        }
    }

    std::vector<std::pair<int, PCoeff<R>>> out;
    for (int b = 0; b < nbuckets; ++b) {
        const Bucket& bk = buckets[std::size_t(b)];
        auto [first, last] = uni.range_at(bk.n);
        for (int pos = first; pos < last; ++pos) {
            const EigenId& id = uni.id(pos);
            const Family want = bk.shape == Shape::YShape ? Family::Y : Family::Z;
            if (id.family != want) continue;
            const std::array<R, 3>& zeta = P.slot_vector(pos);
            R num{};
            for (int c = 0; c < 3; ++c) num += bk.z[c] * zeta[c];
            if (RingOps<R>::is_zero(num)) continue;
            out.emplace_back(pos, PCoeff<R>{num * P.slot_norm_inv(pos), 1});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

}  // namespace cylsat
