#include "cylsat/eigenbasis.hpp"

#include <algorithm>
#include <set>

namespace cylsat {

namespace {

bool nonneg(const Index3& k) { return k[0] >= 0 && k[1] >= 0 && k[2] >= 0; }

/// Scale a rational vector to a primitive integer vector, first nonzero
/// entry positive. Deterministic canonical representative of the ray.
WVector integer_scaled(const WVector& v) {
    mpz_class lcm_den = 1;
    for (const auto& c : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    std::array<mpz_class, 3> n;
    for (int i = 0; i < 3; ++i) {
        Rat scaled = v[i] * Rat(lcm_den);
        scaled.canonicalize();
        n[i] = scaled.get_num();
    }
    mpz_class g = 0;
    for (const auto& z : n) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 0) return {Rat(0), Rat(0), Rat(0)};
    int lead = 0;
    while (lead < 3 && n[lead] == 0) ++lead;
    if (lead < 3 && n[lead] < 0) g = -g;
    WVector out;
    for (int i = 0; i < 3; ++i) out[i] = Rat(mpz_class(n[i] / g));
    return out;
}

void require(bool cond, const char* rule) {
    if (!cond) throw EigenRuleError(rule);
}

}  // namespace

Rat l_weighted_dot(const WVector& x, const Index3& k, const DomainLengths& L) {
    return x[0] * k[0] / L.L1 + x[1] * k[1] / L.L2 + x[2] * k[2] / L.L3;
}

bool eigen_id_valid(const EigenId& id) {
    if (!nonneg(id.k)) return false;
    const int z = count_zeros(id.k);
    if (id.family == Family::Y) {
        if (z > 1) return false;
        return id.j == 1 || (id.j == 2 && z == 0);
    }
    if (id.k[2] == 0) return id.j == 1;  // x3-independent (0,0,cos cos) modes
    if (z > 1) return false;
    return id.j == 1 || (id.j == 2 && z == 0);
}

std::vector<WVector> perp_basis(const Index3& k, const DomainLengths& L) {
    require(nonneg(k), "perp_basis: index entries must be nonnegative");
    const int z = count_zeros(k);
    require(z <= 1, "perp_basis: #0(k) >= 2 has no perp family (special constructors apply)");
    if (z == 1) {
        WVector w;
        if (k[0] == 0)
            w = {Rat(0), L.L2 * k[2], -L.L3 * k[1]};
        else if (k[1] == 0)
            w = {L.L1 * k[2], Rat(0), -L.L3 * k[0]};
        else
            w = {L.L1 * k[1], -L.L2 * k[0], Rat(0)};
        return {integer_scaled(w)};
    }
    // #0(k) == 0: two Euclidean-orthogonal vectors in the constraint plane.
    WVector w1 = {L.L1 * k[1], -L.L2 * k[0], Rat(0)};
    const Rat g0 = Rat(k[0]) / L.L1, g1 = Rat(k[1]) / L.L2, g2 = Rat(k[2]) / L.L3;
    // w2 = g x w1, orthogonal to both the constraint normal and w1.
    WVector w2 = {g1 * w1[2] - g2 * w1[1], g2 * w1[0] - g0 * w1[2], g0 * w1[1] - g1 * w1[0]};
    return {integer_scaled(w1), integer_scaled(w2)};
}

WVector canonical_w(const EigenId& id, const DomainLengths& L) {
    if (!eigen_id_valid(id)) throw EigenRuleError("canonical_w: invalid eigen id " + id.str());
    if (id.family == Family::Z && id.k[2] == 0) {
        if (id.k == Index3{0, 0, 0}) return {Rat(0), Rat(0), Rat(-1)};
        return {Rat(0), Rat(0), Rat(1)};
    }
    return perp_basis(id.k, L)[std::size_t(id.j - 1)];
}

namespace {

Eigenfunction finish_build(Family fam, const Index3& k, const WVector& w, const DomainLengths& L,
                           int j) {
    Eigenfunction e;
    e.id = {fam, k, j};
    e.w = w;
    e.field = make_eigen_field<Rat>(fam, k, w);
    e.lambda_coeff = Rat(k[0]) * k[0] / (L.L1 * L.L1) + Rat(k[1]) * k[1] / (L.L2 * L.L2) +
                     Rat(k[2]) * k[2] / (L.L3 * L.L3);
    return e;
}

}  // namespace

Eigenfunction build_Y(const Index3& k, const WVector& w, const DomainLengths& L, int j) {
    require(nonneg(k), "Y: index entries must be nonnegative");
    require(count_zeros(k) <= 1, "Y: #0(k) <= 1 violated");
    require(!(is_zero(w[0]) && is_zero(w[1]) && is_zero(w[2])), "Y: w must be nonzero");
    for (int i = 0; i < 3; ++i)
        require(k[i] != 0 || is_zero(w[i]), "Y: w_i = 0 required where k_i = 0");
    require(is_zero(l_weighted_dot(w, k, L)), "Y: (w,k)_[L] = 0 violated");
    return finish_build(Family::Y, k, w, L, j);
}

Eigenfunction build_Z(const Index3& k, const WVector& w, const DomainLengths& L, int j) {
    require(nonneg(k), "Z: index entries must be nonnegative");
    require(!(is_zero(w[0]) && is_zero(w[1]) && is_zero(w[2])), "Z: w must be nonzero");
    if (k[2] == 0) {
        // x3-independent family: w = (0,0,w3), realized field (0,0,-w3 C1 C2).
        require(is_zero(w[0]) && is_zero(w[1]), "Z with k3 = 0: w must be (0,0,w3)");
        require(!is_zero(w[2]), "Z with k3 = 0: w3 must be nonzero");
        require(j == 1, "Z with k3 = 0: only j = 1 exists");
        return finish_build(Family::Z, k, w, L, 1);
    }
    require(count_zeros(k) <= 1, "Z: #0(k) <= 1 violated for k3 >= 1");
    for (int i = 0; i < 3; ++i)
        require(k[i] != 0 || is_zero(w[i]), "Z: w_i = 0 required where k_i = 0");
    require(is_zero(l_weighted_dot(w, k, L)), "Z: (w,k)_[L] = 0 violated");
    return finish_build(Family::Z, k, w, L, j);
}

Eigenfunction build(const EigenId& id, const DomainLengths& L) {
    const WVector w = canonical_w(id, L);
    return id.family == Family::Y ? build_Y(id.k, w, L, id.j) : build_Z(id.k, w, L, id.j);
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

void push_if_valid(std::set<EigenId>& out, Family fam, const Index3& k, int j) {
    EigenId id{fam, k, j};
    if (eigen_id_valid(id)) out.insert(id);
}

/// Y and/or Z ids over S^q_R = {0 <= n_i <= q, #0(n) <= 1}.
void add_rect_box(std::set<EigenId>& out, int q, bool with_y, bool with_z) {
    for (int a = 0; a <= q; ++a)
        for (int b = 0; b <= q; ++b)
            for (int c = 0; c <= q; ++c) {
                const Index3 n{a, b, c};
                if (count_zeros(n) > 1) continue;
                for (int j = 1; j <= 2; ++j) {
                    if (with_y) push_if_valid(out, Family::Y, n, j);
                    if (with_z) push_if_valid(out, Family::Z, n, j);
                }
            }
}

/// Z ids over S^q_C \ S^q_R plus the constant mode: the two axis families
/// (n,0,0), (0,n,0) with 0 < n <= q, and (0,0,0).
void add_cyl_extras(std::set<EigenId>& out, int q) {
    for (int n = 1; n <= q; ++n) {
        push_if_valid(out, Family::Z, {n, 0, 0}, 1);
        push_if_valid(out, Family::Z, {0, n, 0}, 1);
    }
    push_if_valid(out, Family::Z, {0, 0, 0}, 1);
}

}  // namespace

Enumeration enumerate_set(const SetSpec& spec) {
    std::set<EigenId> ids;
    Enumeration out;
    switch (spec.kind) {
        case SetSpec::Kind::Thm33:
            add_rect_box(ids, 4, true, true);
            add_cyl_extras(ids, 4);
            out.nominal_count = 355;
            break;
        case SetSpec::Kind::Cor310:
            add_rect_box(ids, 3, true, false);
            add_rect_box(ids, 4, false, true);
            add_cyl_extras(ids, 4);
            out.nominal_count = 260;
            break;
        case SetSpec::Kind::RectQ:
        case SetSpec::Kind::CqR:
            if (spec.q < 0) throw std::invalid_argument("enumerate_set: q must be >= 0");
            add_rect_box(ids, spec.q, true, false);
            break;
        case SetSpec::Kind::CqC:
            if (spec.q < 0) throw std::invalid_argument("enumerate_set: q must be >= 0");
            add_rect_box(ids, spec.q, true, true);
            add_cyl_extras(ids, spec.q);
            break;
        case SetSpec::Kind::Custom:
            for (const auto& id : spec.custom) {
                if (!eigen_id_valid(id))
                    throw std::invalid_argument("enumerate_set: invalid custom id " + id.str());
                ids.insert(id);
            }
            break;
    }
    out.ids.assign(ids.begin(), ids.end());
    for (const auto& id : out.ids)
        (id.family == Family::Y ? out.count_y : out.count_z) += 1;
    return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

TrigScalar restrict_to_face(const TrigScalar& s, int axis, bool at_far_end) {
    TrigScalar out;
    for (const auto& t : s.terms()) {
        if (t.f[axis] == Factor::Sin) continue;  // sin(k pi) = 0 at both ends
        Rat c = t.coeff;
        if (at_far_end && (t.k[axis] & 1)) c = -c;  // cos(k pi) = (-1)^k
        Factors3 f = t.f;
        Index3 k = t.k;
        k[axis] = 0;
        out.add_term(f, k, t.pi_pow, std::move(c));
    }
    out.finalize();
    return out;
}

ValidationReport validate_eigenfunction(const Eigenfunction& e, const DomainLengths& L) {
    ValidationReport rep;
    const auto Lx = L.exact();

    {
        TrigScalar div = divergence(e.field, Lx);
        rep.checks.push_back({"divergence_zero", div.is_zero(),
                              div.is_zero() ? "" : "div = " + to_text(div)});
    }

    // u.n on the four lateral faces: the normal component restricted to the face.
    for (int axis = 0; axis < 2; ++axis) {
        for (int side = 0; side < 2; ++side) {
            TrigScalar un = restrict_to_face(e.field.comp[axis], axis, side == 1);
            const std::string name = "u_dot_n_zero_x" + std::to_string(axis + 1) + "_" +
                                     (side == 0 ? "0" : "L");
            rep.checks.push_back({name, un.is_zero(), un.is_zero() ? "" : to_text(un)});
        }
    }

    // Tangential curl components vanish on the lateral faces.
    {
        TrigVectorField cu = curl(e.field, Lx);
        for (int axis = 0; axis < 2; ++axis) {
            for (int side = 0; side < 2; ++side) {
                bool ok = true;
                std::string detail;
                for (int c = 0; c < 3; ++c) {
                    if (c == axis) continue;  // normal component is unconstrained
                    TrigScalar r = restrict_to_face(cu.comp[c], axis, side == 1);
                    if (!r.is_zero()) {
                        ok = false;
                        detail = "curl component " + std::to_string(c + 1) + " = " + to_text(r);
                    }
                }
                const std::string name = "tangential_curl_zero_x" + std::to_string(axis + 1) +
                                         "_" + (side == 0 ? "0" : "L");
                rep.checks.push_back({name, ok, detail});
            }
        }
    }

    {
        // -Lap e = pi^2 lambda_coeff e, exactly, componentwise.
        bool ok = true;
        for (int c = 0; c < 3 && ok; ++c) {
            TrigScalar lhs = laplacian(e.field.comp[c], Lx);
            TrigScalar rhs = e.field.comp[c].scaled(e.lambda_coeff, 2);
            ok = (lhs + rhs).is_zero();
        }
        rep.checks.push_back({"eigen_relation", ok, ok ? "" : "-Lap e != lambda e"});
    }

    {
        PiRat nrm = inner(e.field, e.field, L);
        const bool ok = sgn(nrm.value) > 0;
        rep.checks.push_back({"norm_positive", ok, ok ? "" : "zero field"});
    }

    return rep;
}

}  // namespace cylsat
