#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cylsat/eigenbasis.hpp"

using namespace cylsat;

namespace {
const DomainLengths kUnit{rat(1), rat(1), rat(1)};
const DomainLengths kMixed{rat(1), rat(2), rat(3, 2)};

WVector wv(long a, long b, long c) { return {rat(a), rat(b), rat(c)}; }
}  // namespace

TEST_CASE("perp_basis: single-vector cases match the expected rays") {
    // k with one zero entry: a single vector proportional to the displayed one.
    auto v = perp_basis({0, 1, 1}, kUnit);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == wv(0, 1, -1));  // ~ (0, L2, -L3)

    auto w = perp_basis({1, 0, 4}, kUnit);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == wv(4, 0, -1));  // ~ (L1 q, 0, -L3) at q = 4

    // non-unit lengths keep the ray, scaled to a primitive integer vector
    auto m = perp_basis({0, 1, 1}, kMixed);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == wv(0, 4, -3));  // ~ (0, L2, -L3) = (0, 2, -3/2)
}

TEST_CASE("perp_basis: two orthogonal vectors when no entry vanishes") {
    auto v = perp_basis({1, 1, 1}, kUnit);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == wv(1, -1, 0));
    CHECK(v[1] == wv(1, 1, -2));
    for (const auto& x : v) CHECK(is_zero(l_weighted_dot(x, {1, 1, 1}, kUnit)));
    CHECK(is_zero(v[0][0] * v[1][0] + v[0][1] * v[1][1] + v[0][2] * v[1][2]));

    // constraints hold exactly for non-unit lengths too
    auto m = perp_basis({2, 3, 1}, kMixed);
    REQUIRE(m.size() == 2);
    for (const auto& x : m) CHECK(is_zero(l_weighted_dot(x, {2, 3, 1}, kMixed)));
    CHECK(is_zero(m[0][0] * m[1][0] + m[0][1] * m[1][1] + m[0][2] * m[1][2]));
}

TEST_CASE("perp_basis rejects #0(k) >= 2") {
    CHECK_THROWS_AS(perp_basis({1, 0, 0}, kUnit), EigenRuleError);
    CHECK_THROWS_AS(perp_basis({0, 0, 0}, kUnit), EigenRuleError);
}

TEST_CASE("build_Z((0,0,0),(0,0,-1)) is the constant field (0,0,1)") {
    Eigenfunction e = build_Z({0, 0, 0}, wv(0, 0, -1), kMixed);
    CHECK(e.field.comp[0].is_zero());
    CHECK(e.field.comp[1].is_zero());
    CHECK(e.field.comp[2] == TrigScalar::constant(rat(1)));
    CHECK(is_zero(e.lambda_coeff));  // curl-free constant: eigenvalue 0
}

TEST_CASE("build_Y rejects #0(k)=2 and constraint violations") {
    CHECK_THROWS_AS(build_Y({1, 0, 0}, wv(0, 0, 1), kUnit), EigenRuleError);
    CHECK_THROWS_AS(build_Y({1, 1, 1}, wv(1, 1, 1), kUnit), EigenRuleError);   // (w,k)_L != 0
    CHECK_THROWS_AS(build_Y({0, 1, 1}, wv(1, 1, -1), kUnit), EigenRuleError);  // w1 != 0, k1 = 0
}

TEST_CASE("eigenvalue: lambda = nu pi^2 sum (k_i/L_i)^2") {
    Eigenfunction e = build_Y({1, 1, 1}, wv(1, -1, 0), kUnit);
    CHECK(e.lambda_coeff == rat(3));
    CHECK(e.lambda_over_nu() == PiRat(rat(3), 2));

    // symbolic oracle: -Lap e = pi^2 lambda_coeff e, term by term
    const auto Lx = kUnit.exact();
    for (int c = 0; c < 3; ++c) {
        TrigScalar lhs = laplacian(e.field.comp[c], Lx);
        CHECK((lhs + e.field.comp[c].scaled(e.lambda_coeff, 2)).is_zero());
    }
}

TEST_CASE("Z family with k3 = 0 realizes the x3-independent modes") {
    Eigenfunction axis = build(EigenId{Family::Z, {3, 0, 0}, 1}, kMixed);
    CHECK(axis.field.comp[0].is_zero());
    CHECK(axis.field.comp[1].is_zero());
    CHECK(axis.field.comp[2] ==
          TrigScalar::monomial({Factor::Cos, Factor::Cos, Factor::Cos}, {3, 0, 0}, 0, rat(-1)));

    Eigenfunction plane = build(EigenId{Family::Z, {2, 1, 0}, 1}, kMixed);
    CHECK(plane.field.comp[2] ==
          TrigScalar::monomial({Factor::Cos, Factor::Cos, Factor::Cos}, {2, 1, 0}, 0, rat(-1)));
    CHECK(validate_eigenfunction(plane, kMixed).all_pass());
}

TEST_CASE("enumerate_set counts") {
    CHECK(enumerate_set(SetSpec::cq_r(3)).count() == 81);
    CHECK(enumerate_set(SetSpec::rect_q(3)).count() == 81);

    Enumeration thm = enumerate_set(SetSpec::thm33());
    CHECK(thm.count() == 361);  // computed; differs from the quoted 355
    CHECK(thm.nominal_count == 355);
    CHECK(thm.nominal_mismatch());
    CHECK(thm.count_y == 176);
    CHECK(thm.count_z == 185);

    Enumeration cor = enumerate_set(SetSpec::cor310());
    CHECK(cor.count() == 266);  // computed; differs from the quoted 260
    CHECK(cor.nominal_mismatch());
    CHECK(cor.count_y == 81);

    CHECK(enumerate_set(SetSpec::custom_ids({})).count() == 0);

    // thm33 is exactly C^4_C
    CHECK(enumerate_set(SetSpec::cq_c(4)).ids == thm.ids);
}

TEST_CASE("enumeration is sorted and duplicate-free; ids all valid") {
    Enumeration e = enumerate_set(SetSpec::thm33());
    for (std::size_t i = 0; i < e.ids.size(); ++i) {
        CHECK(eigen_id_valid(e.ids[i]));
        if (i) CHECK(e.ids[i - 1] < e.ids[i]);
    }
}

TEST_CASE("validation: sampled THM33 elements pass all exact checks") {
    Enumeration e = enumerate_set(SetSpec::thm33());
    for (std::size_t i = 0; i < e.ids.size(); i += 17) {
        Eigenfunction f = build(e.ids[i], kMixed);
        ValidationReport rep = validate_eigenfunction(f, kMixed);
        INFO(e.ids[i].str());
        CHECK(rep.all_pass());
    }
}

TEST_CASE("curl of Y restricted to x1 = L1 keeps only the normal component") {
    Eigenfunction e = build_Y({2, 1, 3}, perp_basis({2, 1, 3}, kMixed)[0], kMixed);
    TrigVectorField cu = curl(e.field, kMixed.exact());
    CHECK(restrict_to_face(cu.comp[1], 0, true).is_zero());
    CHECK(restrict_to_face(cu.comp[2], 0, true).is_zero());
    CHECK(!restrict_to_face(cu.comp[0], 0, true).is_zero());
}

TEST_CASE("a w violating the [L]-constraint fails the divergence check") {
    Eigenfunction e = build_Y({1, 1, 1}, wv(1, -1, 0), kUnit);
    e.w = wv(1, 1, 0);
    e.field = make_eigen_field<Rat>(Family::Y, {1, 1, 1}, {rat(1), rat(1), rat(0)});
    ValidationReport rep = validate_eigenfunction(e, kUnit);
    CHECK(!rep.all_pass());
    bool div_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "divergence_zero" && !c.pass) div_failed = true;
    CHECK(div_failed);
}

TEST_CASE("same-index eigenfunctions are pairwise L2-orthogonal with positive norms") {
    for (const Index3 k : {Index3{1, 1, 1}, Index3{2, 1, 3}, Index3{1, 2, 2}}) {
        std::vector<Eigenfunction> fam;
        for (Family f : {Family::Y, Family::Z})
            for (int j = 1; j <= 2; ++j) {
                EigenId id{f, k, j};
                if (eigen_id_valid(id)) fam.push_back(build(id, kMixed));
            }
        REQUIRE(fam.size() == 4);
        for (std::size_t a = 0; a < fam.size(); ++a) {
            CHECK(sgn(inner(fam[a].field, fam[a].field, kMixed).value) > 0);
            for (std::size_t b = a + 1; b < fam.size(); ++b)
                CHECK(inner(fam[a].field, fam[b].field, kMixed).zero());
        }
    }
}

TEST_CASE("A realized as nu curl curl reproduces lambda exactly") {
    const auto Lx = kMixed.exact();
    for (const EigenId id : {EigenId{Family::Y, {1, 2, 1}, 2}, EigenId{Family::Z, {2, 2, 3}, 1},
                             EigenId{Family::Z, {0, 1, 2}, 1}}) {
        Eigenfunction e = build(id, kMixed);
        TrigVectorField cc = curl(curl(e.field, Lx), Lx);
        for (int c = 0; c < 3; ++c)
            CHECK((cc.comp[c] - e.field.comp[c].scaled(e.lambda_coeff, 2)).is_zero());
    }
}

TEST_CASE("Y and Z fields at mixed indices stay orthogonal (sin vs cos in x3)") {
    Eigenfunction y = build(EigenId{Family::Y, {1, 1, 2}, 1}, kUnit);
    Eigenfunction z = build(EigenId{Family::Z, {1, 1, 2}, 1}, kUnit);
    CHECK(inner(y.field, z.field, kUnit).zero());
}

TEST_CASE("shell enumeration equals an independently constructed union") {
    // brute force over the index box with the displayed selection rules,
    // assembled through a different code path than enumerate_set
    const int q = 3;
    std::set<EigenId> expect;
    for (int a = 0; a <= q; ++a)
        for (int b = 0; b <= q; ++b)
            for (int c = 0; c <= q; ++c) {
                const int zeros = (a == 0) + (b == 0) + (c == 0);
                if (zeros <= 1) {
                    expect.insert({Family::Y, {a, b, c}, 1});
                    if (zeros == 0) expect.insert({Family::Y, {a, b, c}, 2});
                    if (c >= 1) {
                        expect.insert({Family::Z, {a, b, c}, 1});
                        if (zeros == 0) expect.insert({Family::Z, {a, b, c}, 2});
                    } else {
                        expect.insert({Family::Z, {a, b, 0}, 1});
                    }
                }
            }
    for (int n = 1; n <= q; ++n) {
        expect.insert({Family::Z, {n, 0, 0}, 1});
        expect.insert({Family::Z, {0, n, 0}, 1});
    }
    expect.insert({Family::Z, {0, 0, 0}, 1});

    Enumeration e = enumerate_set(SetSpec::cq_c(q));
    CHECK(e.ids == std::vector<EigenId>(expect.begin(), expect.end()));
}
