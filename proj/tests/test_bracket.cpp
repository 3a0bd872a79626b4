#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylsat/bracket.hpp"
#include "cylsat/span.hpp"

using namespace cylsat;

namespace {
const DomainLengths kUnit{rat(1), rat(1), rat(1)};
const DomainLengths kMixed{rat(1), rat(2), rat(3, 2)};

WVector wv(Rat a, Rat b, Rat c) { return {std::move(a), std::move(b), std::move(c)}; }

const ShapeTerm* term_at(const std::vector<ShapeTerm>& v, const Index3& k) {
    for (const auto& t : v)
        if (t.k == k) return &t;
    return nullptr;
}
}  // namespace

TEST_CASE("beta: closed form and edge values") {
    const int q = 4;
    // w = (L1 q, 0, -L3), m = (0,1,1): any signs with s3 = + give -pi/8
    const WVector w1 = wv(kUnit.L1 * q, rat(0), -kUnit.L3);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            CHECK(beta(w1, {0, 1, 1}, {s1, s2, 1}, kUnit) == PiRat(rat(-1, 8), 1));
            CHECK(beta(w1, {0, 1, 1}, {s1, s2, -1}, kUnit) == PiRat(rat(1, 8), 1));
        }

    // m = (0,0,0) kills every term
    CHECK(beta(w1, {0, 0, 0}, {1, -1, 1}, kUnit).zero());

    // w = (0, L2, -L3), k = (1,0,q), s3 = + gives -pi q/8
    const WVector w2 = wv(rat(0), kUnit.L2, -kUnit.L3);
    CHECK(beta(w2, {1, 0, q}, {1, 1, 1}, kUnit) == PiRat(rat(-q, 8), 1));
}

TEST_CASE("bracket of the constant mode with itself vanishes") {
    Universe u(1);
    Projector P(u, kUnit);
    Eigenfunction z0 = build(EigenId{Family::Z, {0, 0, 0}, 1}, kUnit);
    BracketResult r = bracket_generic(z0, z0, P);
    CHECK(r.projected.empty());
    CHECK(r.unprojected_terms.empty());
}

TEST_CASE("bracket is symmetric for random pairs from the theorem set") {
    Enumeration e = enumerate_set(SetSpec::thm33());
    Universe u(8);
    Projector P(u, kMixed);
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> pick(0, e.ids.size() - 1);
    for (int t = 0; t < 20; ++t) {
        Eigenfunction a = build(e.ids[pick(rng)], kMixed);
        Eigenfunction b = build(e.ids[pick(rng)], kMixed);
        CHECK(bracket_generic(a, b, P).projected == bracket_generic(b, a, P).projected);
    }
}

TEST_CASE("closed form and generic path agree on Y-Z pairs (entries <= 2)") {
    Universe u(4);
    for (const DomainLengths& L : {kUnit, kMixed}) {
        Projector P(u, L);
        int checked = 0;
        for (int k1 = 0; k1 <= 2; ++k1)
            for (int k2 = 0; k2 <= 2; ++k2)
                for (int k3 = 0; k3 <= 2; ++k3)
                    for (int m1 = 0; m1 <= 2; ++m1)
                        for (int m2 = 0; m2 <= 2; ++m2)
                            for (int m3 = 0; m3 <= 2; ++m3) {
                                const EigenId yid{Family::Y, {k1, k2, k3}, 1};
                                const EigenId zid{Family::Z, {m1, m2, m3}, 1};
                                if (!eigen_id_valid(yid) || !eigen_id_valid(zid)) continue;
                                if ((checked++ & 3) != 0) continue;  // thinned here; full in acceptance
                                Eigenfunction y = build(yid, L);
                                Eigenfunction z = build(zid, L);
                                BracketResult cf =
                                    yz_mix_closed_form(y.id.k, y.w, z.id.k, z.w, P);
                                BracketResult gen = bracket_generic(y, z, P);
                                INFO(yid.str(), " x ", zid.str());
                                CHECK(cf.projected == gen.projected);
                            }
        CHECK(checked > 100);
    }
}

TEST_CASE("closed form reproduces the (1,1,q+1) z-vector") {
    const int q = 4;
    const Index3 k{1, 0, q}, m{0, 1, 1};
    const WVector wk = wv(kUnit.L1 * q, rat(0), -kUnit.L3);
    const WVector wm = wv(rat(0), kUnit.L2, -kUnit.L3);
    auto terms = yz_mix_terms(k, wk, m, wm, kUnit);
    const ShapeTerm* t = term_at(terms, {1, 1, q + 1});
    REQUIRE(t != nullptr);
    CHECK(t->shape == Shape::ZShape);
    CHECK(t->pi_pow == 1);
    CHECK(t->z[0] == rat(-q * q, 2) * kUnit.L1);
    CHECK(t->z[1] == rat(-1, 2) * kUnit.L2);
    CHECK(t->z[2] == rat(-(q + 1), 2) * kUnit.L3);

    // every result index lies in {|k +- m|} componentwise
    for (const auto& st : terms) {
        for (int i = 0; i < 3; ++i) {
            const bool plus = st.k[i] == k[i] + m[i];
            const bool minus = st.k[i] == std::abs(k[i] - m[i]);
            CHECK((plus || minus));
        }
    }
}

TEST_CASE("x3-independent output: the (q+1,l,0) term is proportional to (0,0,l)") {
    const int q = 5, l = 3;
    const Index3 k{q, l, 0}, m{1, 0, 0};
    const WVector wk = wv(kUnit.L1 * l, -kUnit.L2 * q, rat(0));
    const WVector wm = wv(rat(0), rat(0), rat(1));
    auto terms = yz_mix_terms(k, wk, m, wm, kUnit);
    const ShapeTerm* t = term_at(terms, {q + 1, l, 0});
    REQUIRE(t != nullptr);
    CHECK(t->z[0] == rat(0));
    CHECK(t->z[1] == rat(0));
    // computed value is -(pi/2) l; the quoted display carries the opposite
    // sign, immaterial up to the scalar freedom of the step
    CHECK(t->z[2] == rat(-l, 2));

    // cross-check through the generic path
    Universe u(q + 2);
    Projector P(u, kUnit);
    Eigenfunction y = build_Y(k, wk, kUnit);
    Eigenfunction z = build_Z(m, wm, kUnit);
    CHECK(yz_mix_closed_form(k, wk, m, wm, P).projected == bracket_generic(y, z, P).projected);
}

TEST_CASE("pair determinant checks with the engineered degenerate lengths") {
    // q^2 = (L2 L3 + L1 L3 - L1 L2)/(L1 L2) at q = 4 forces L = (1,1,17/2).
    const DomainLengths L{rat(1), rat(1), rat(17, 2)};
    const int q = 4;
    const Index3 n{1, 1, q + 1};

    const auto a = yz_mix_terms({1, 0, q}, wv(L.L1 * q, rat(0), -L.L3), {0, 1, 1},
                                wv(rat(0), L.L2, -L.L3), L);
    const auto g = yz_mix_terms({0, 1, q}, wv(rat(0), L.L2 * q, -L.L3), {1, 0, 1},
                                wv(L.L1, rat(0), -L.L3), L);
    const auto d = yz_mix_terms({1, 0, q - 1}, wv(L.L1 * (q - 1), rat(0), -L.L3), {0, 1, 2},
                                wv(rat(0), L.L2 * 2, -L.L3), L);
    const ShapeTerm* za = term_at(a, n);
    const ShapeTerm* zg = term_at(g, n);
    const ShapeTerm* zd = term_at(d, n);
    REQUIRE(za);
    REQUIRE(zg);
    REQUIRE(zd);

    const WVector nv = wv(rat(n[0]), rat(n[1]), rat(n[2]));
    CHECK(is_zero(det3(nv, {za->z[0], za->z[1], za->z[2]}, {zg->z[0], zg->z[1], zg->z[2]})));
    CHECK(!check_lin_indep_pair({za->z[0], za->z[1], za->z[2]}, {zg->z[0], zg->z[1], zg->z[2]}, n, L));
    CHECK(check_lin_indep_triple({za->z[0], za->z[1], za->z[2]}, {zg->z[0], zg->z[1], zg->z[2]},
                                 {zd->z[0], zd->z[1], zd->z[2]}, n, L));

    // away from the engineered lengths the printed pair determinant is nonzero
    const auto au = yz_mix_terms({1, 0, q}, wv(kUnit.L1 * q, rat(0), -kUnit.L3), {0, 1, 1},
                                 wv(rat(0), kUnit.L2, -kUnit.L3), kUnit);
    const auto gu = yz_mix_terms({0, 1, q}, wv(rat(0), kUnit.L2 * q, -kUnit.L3), {1, 0, 1},
                                 wv(kUnit.L1, rat(0), -kUnit.L3), kUnit);
    const ShapeTerm* zau = term_at(au, n);
    const ShapeTerm* zgu = term_at(gu, n);
    REQUIRE(zau);
    REQUIRE(zgu);
    CHECK(check_lin_indep_pair({zau->z[0], zau->z[1], zau->z[2]},
                               {zgu->z[0], zgu->z[1], zgu->z[2]}, n, kUnit));
}

TEST_CASE("unit-vector sanity for the independence checks") {
    CHECK(check_lin_indep_pair(wv(rat(1), rat(0), rat(0)), wv(rat(0), rat(1), rat(0)), {0, 0, 1},
                               kUnit));
    CHECK(!check_lin_indep_pair(wv(rat(1), rat(2), rat(3)), wv(rat(1), rat(2), rat(3)), {1, 1, 1},
                                kUnit));
}

TEST_CASE("kernel-form pair check agrees with the projected-rank oracle on random data") {
    Universe u(3);
    Projector P(u, kMixed);
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> ci(-3, 3), ki(1, 3);
    int dependents = 0, printed_disagrees = 0;
    for (int t = 0; t < 200; ++t) {
        const WVector alpha = wv(rat(ci(rng)), rat(ci(rng)), rat(ci(rng)));
        const WVector gamma = wv(rat(ci(rng)), rat(ci(rng)), rat(ci(rng)));
        const Index3 k{ki(rng), ki(rng), ki(rng)};
        const bool oracle = projected_pair_spans(alpha, gamma, k, P);
        CHECK(projected_pair_independent(alpha, gamma, k, kMixed) == oracle);
        if (check_lin_indep_pair(alpha, gamma, k, kMixed) != oracle) ++printed_disagrees;
        dependents += oracle ? 0 : 1;
    }
    CHECK(dependents > 0);  // the sample hits both branches
    // The plain det(alpha|gamma|k) form is a different predicate: it misses
    // the kernel direction of the projection and provably diverges from the
    // projected rank on some inputs. The engine keeps it only because the
    // scripted determinant displays are stated with it.
    CHECK(printed_disagrees > 0);
}

TEST_CASE("printed pair criterion differs from the projected span on a concrete case") {
    // alpha + k dependence with k != kernel direction: the printed check says
    // "dependent" while the projections genuinely span the eigenspace.
    Universe u(2);
    Projector P(u, kUnit);
    const Index3 k{1, 1, 1};
    const WVector alpha = wv(rat(1), rat(0), rat(0));
    const WVector gamma = wv(rat(0), rat(1), rat(1));  // alpha + gamma = k
    CHECK(!check_lin_indep_pair(alpha, gamma, k, kUnit));
    CHECK(projected_pair_independent(alpha, gamma, k, kUnit));
    CHECK(projected_pair_spans(alpha, gamma, k, P));
}

TEST_CASE("energy identity: <(u.grad)v, v> = 0 for divergence-free tangent fields") {
    Enumeration e = enumerate_set(SetSpec::cq_c(2));
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<std::size_t> pick(0, e.ids.size() - 1);
    std::uniform_int_distribution<int> ci(-3, 3);
    const auto Lx = kMixed.exact();
    for (int t = 0; t < 8; ++t) {
        TrigVectorField uf, vf;
        for (int s = 0; s < 3; ++s) {
            Eigenfunction a = build(e.ids[pick(rng)], kMixed);
            Eigenfunction b = build(e.ids[pick(rng)], kMixed);
            const Rat ca = rat(ci(rng)), cb = rat(ci(rng));
            for (int c = 0; c < 3; ++c) {
                uf.comp[c].add_scaled(a.field.comp[c], ca);
                vf.comp[c].add_scaled(b.field.comp[c], cb);
            }
        }
        for (auto& c : uf.comp) c.finalize();
        for (auto& c : vf.comp) c.finalize();
        CHECK(inner(advect(uf, vf, Lx), vf, kMixed).zero());
    }
}

TEST_CASE("specialized pair bracket agrees with the symbolic pipeline everywhere") {
    Universe u(4);
    const DomainLengths L{rat(1), rat(2), rat(3, 2)};
    ProjectorT<Rat> P(u, L);
    std::vector<int> small;
    for (std::size_t pos = 0; pos < u.size(); ++pos) {
        const Index3& k = u.id(int(pos)).k;
        if (k[0] <= 2 && k[1] <= 2 && k[2] <= 2) small.push_back(int(pos));
    }
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    int nontrivial = 0;
    for (int t = 0; t < 250; ++t) {
        const int a = small[pick(rng)], b = small[pick(rng)];
        auto fast = eigen_pair_bracket(P, a, b);
        auto ref = pair_bracket(P, a, b);
        REQUIRE(fast.size() == ref.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].first == ref[i].first);
            CHECK(fast[i].second.value == ref[i].second.value);
            CHECK(fast[i].second.pi_pow == ref[i].second.pi_pow);
        }
        nontrivial += fast.empty() ? 0 : 1;
    }
    CHECK(nontrivial > 100);
}
