#include "cylsat/bracket.hpp"

#include <map>

namespace cylsat {

PiRat beta(const WVector& w, const Index3& m, const SignTriple& s, const DomainLengths& L) {
    Rat v = Rat(s.s1) * w[0] * m[0] / L.L1 + Rat(s.s2) * w[1] * m[1] / L.L2 +
            Rat(s.s3) * w[2] * m[2] / L.L3;
    return PiRat(v / 8, 1);
}

TrigVectorField realize_shape(const ShapeTerm& t) {
    const Factor S = Factor::Sin, C = Factor::Cos;
    TrigVectorField u;
    if (t.shape == Shape::ZShape) {
        u.comp[0].add_term({S, C, S}, t.k, t.pi_pow, t.z[0]);
        u.comp[1].add_term({C, S, S}, t.k, t.pi_pow, t.z[1]);
        u.comp[2].add_term({C, C, C}, t.k, t.pi_pow, t.z[2]);
    } else {
        u.comp[0].add_term({S, C, C}, t.k, t.pi_pow, t.z[0]);
        u.comp[1].add_term({C, S, C}, t.k, t.pi_pow, t.z[1]);
        u.comp[2].add_term({C, C, S}, t.k, t.pi_pow, t.z[2]);
    }
    for (auto& c : u.comp) c.finalize();
    return u;
}

std::vector<ShapeTerm> decompose_shapes(const TrigVectorField& u) {
    static const Factors3 y_pat[3] = {{Factor::Sin, Factor::Cos, Factor::Cos},
                                      {Factor::Cos, Factor::Sin, Factor::Cos},
                                      {Factor::Cos, Factor::Cos, Factor::Sin}};
    static const Factors3 z_pat[3] = {{Factor::Sin, Factor::Cos, Factor::Sin},
                                      {Factor::Cos, Factor::Sin, Factor::Sin},
                                      {Factor::Cos, Factor::Cos, Factor::Cos}};
    std::map<std::pair<Index3, Shape>, ShapeTerm> acc;
    for (int c = 0; c < 3; ++c) {
        for (const auto& t : u.comp[c].terms()) {
            Shape sh;
            if (t.f == y_pat[c])
                sh = Shape::YShape;
            else if (t.f == z_pat[c])
                sh = Shape::ZShape;
            else
                throw std::logic_error("decompose_shapes: monomial outside the Y/Z shape family");
            auto [it, fresh] = acc.try_emplace({t.k, sh});
            ShapeTerm& st = it->second;
            if (fresh) {
                st.shape = sh;
                st.k = t.k;
                st.pi_pow = t.pi_pow;
            } else if (st.pi_pow != t.pi_pow) {
                throw std::logic_error("decompose_shapes: mixed pi powers at one index");
            }
            st.z[c] = t.coeff;
        }
    }
    std::vector<ShapeTerm> out;
    out.reserve(acc.size());
    for (auto& [key, st] : acc) out.push_back(std::move(st));
    return out;
}

BracketResult bracket_generic(const Eigenfunction& a, const Eigenfunction& b, const Projector& P) {
    const auto Lx = P.lengths().exact();
    TrigVectorField sum = advect(a.field, b.field, Lx) + advect(b.field, a.field, Lx);
    BracketResult r;
    r.projected = P.project(sum);
    r.unprojected_terms = decompose_shapes(sum);
    return r;
}

namespace {

struct MixTermSpec {
    int cm;      // sign on w_c^m beta_{w^k,m}
    int ck;      // sign on w_c^k beta_{w^m,k}
    int s2, s3;  // the beta superscripts (+, s2, s3)
    int d1, d2, d3;  // result index k_i + d_i m_i
};

// Rows transcribed from the eight-term displays for the three components of
// (Y^k.grad)Z^m + (Z^m.grad)Y^k.
constexpr MixTermSpec kMixTable[3][8] = {
    {
        {+1, +1, +1, +1, +1, +1, +1},
        {-1, +1, +1, +1, -1, -1, -1},
        {-1, -1, +1, -1, +1, +1, -1},
        {+1, -1, +1, -1, -1, -1, +1},
        {+1, +1, -1, +1, +1, -1, +1},
        {-1, +1, -1, +1, -1, +1, -1},
        {-1, -1, -1, -1, +1, -1, -1},
        {+1, -1, -1, -1, -1, +1, +1},
    },
    {
        {+1, +1, +1, +1, +1, +1, +1},
        {-1, +1, +1, +1, -1, -1, -1},
        {-1, -1, +1, -1, +1, +1, -1},
        {+1, -1, +1, -1, -1, -1, +1},
        {-1, +1, -1, +1, +1, -1, +1},
        {+1, +1, -1, +1, -1, +1, -1},
        {+1, -1, -1, -1, +1, -1, -1},
        {-1, -1, -1, -1, -1, +1, +1},
    },
    {
        {-1, -1, +1, +1, +1, +1, +1},
        {+1, -1, +1, +1, -1, -1, -1},
        {-1, +1, +1, -1, +1, +1, -1},
        {+1, +1, +1, -1, -1, -1, +1},
        {-1, -1, -1, +1, +1, -1, +1},
        {+1, -1, -1, +1, -1, +1, -1},
        {-1, +1, -1, -1, +1, -1, -1},
        {+1, +1, -1, -1, -1, +1, +1},
    },
};

}  // namespace

std::vector<ShapeTerm> yz_mix_terms(const Index3& k, const WVector& wk, const Index3& m,
                                    const WVector& wm, const DomainLengths& L) {
    // Validate the data as a (Y, Z) pair; throws with the violated rule named.
    build_Y(k, wk, L);
    build_Z(m, wm, L);

    static const Factors3 z_pat[3] = {{Factor::Sin, Factor::Cos, Factor::Sin},
                                      {Factor::Cos, Factor::Sin, Factor::Sin},
                                      {Factor::Cos, Factor::Cos, Factor::Cos}};
    TrigVectorField sum;
    for (int c = 0; c < 3; ++c) {
        for (const MixTermSpec& ts : kMixTable[c]) {
            const SignTriple s{+1, ts.s2, ts.s3};
            const PiRat bkm = beta(wk, m, s, L);
            const PiRat bmk = beta(wm, k, s, L);
            Rat coeff = Rat(ts.cm) * wm[c] * bkm.value + Rat(ts.ck) * wk[c] * bmk.value;
            const Index3 idx{k[0] + ts.d1 * m[0], k[1] + ts.d2 * m[1], k[2] + ts.d3 * m[2]};
            sum.comp[c].add_term(z_pat[c], idx, 1, std::move(coeff));
        }
        sum.comp[c].finalize();
    }
    return decompose_shapes(sum);
}

BracketResult yz_mix_closed_form(const Index3& k, const WVector& wk, const Index3& m,
                                 const WVector& wm, const Projector& P) {
    BracketResult r;
    r.unprojected_terms = yz_mix_terms(k, wk, m, wm, P.lengths());
    TrigVectorField sum;
    for (const auto& t : r.unprojected_terms) {
        TrigVectorField f = realize_shape(t);
        for (int c = 0; c < 3; ++c) sum.comp[c].add_scaled(f.comp[c], Rat(1));
    }
    for (auto& c : sum.comp) c.finalize();
    r.projected = P.project(sum);
    return r;
}

Rat det3(const WVector& a, const WVector& b, const WVector& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

namespace {
WVector to_w(const Index3& k) { return {Rat(k[0]), Rat(k[1]), Rat(k[2])}; }
}  // namespace

bool check_lin_indep_pair(const WVector& alpha, const WVector& gamma, const Index3& k,
                          const DomainLengths&) {
    return !is_zero(det3(alpha, gamma, to_w(k)));
}

bool check_lin_indep_triple(const WVector& alpha, const WVector& gamma, const WVector& delta,
                            const Index3& k, const DomainLengths& L) {
    return check_lin_indep_pair(alpha, gamma, k, L) || check_lin_indep_pair(alpha, delta, k, L) ||
           check_lin_indep_pair(gamma, delta, k, L);
}

WVector kernel_vector(const Index3& k, const DomainLengths& L) {
    return {Rat(k[0]) / L.L1, Rat(k[1]) / L.L2, -Rat(k[2]) / L.L3};
}

bool projected_pair_independent(const WVector& alpha, const WVector& gamma, const Index3& k,
                                const DomainLengths& L) {
    return !is_zero(det3(alpha, gamma, kernel_vector(k, L)));
}

bool projected_triple_independent(const WVector& alpha, const WVector& gamma,
                                  const WVector& delta, const Index3& k, const DomainLengths& L) {
    return projected_pair_independent(alpha, gamma, k, L) ||
           projected_pair_independent(alpha, delta, k, L) ||
           projected_pair_independent(gamma, delta, k, L);
}

bool projected_pair_spans(const WVector& alpha, const WVector& gamma, const Index3& k,
                          const Projector& P) {
    const EigenId z1{Family::Z, k, 1}, z2{Family::Z, k, 2};
    const int p1 = P.universe().index_of(z1);
    const int p2 = P.universe().index_of(z2);
    if (p1 < 0 || p2 < 0)
        throw std::invalid_argument("projected_pair_spans: Z^{1,k}, Z^{2,k} not in universe");
    auto coord = [&](const EigenCoords& c, int pos) -> Rat {
        for (const auto& [p, v] : c.entries)
            if (p == pos) return v.value;
        return Rat(0);
    };
    EigenCoords ca = P.project(realize_shape({Shape::ZShape, k, {alpha[0], alpha[1], alpha[2]}, 0}));
    EigenCoords cg = P.project(realize_shape({Shape::ZShape, k, {gamma[0], gamma[1], gamma[2]}, 0}));
    const Rat a1 = coord(ca, p1), a2 = coord(ca, p2);
    const Rat g1 = coord(cg, p1), g2 = coord(cg, p2);
    return !is_zero(a1 * g2 - a2 * g1);
}

}  // namespace cylsat
