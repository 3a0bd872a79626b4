#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylsat/bracket.hpp"
#include "cylsat/projector.hpp"

using namespace cylsat;

namespace {
const DomainLengths kMixed{rat(1), rat(2), rat(3, 2)};

/// Random element of the shape family: combinations of Y/Z-shape slices plus
/// gradients of shape-compatible scalars (the projector's working domain).
TrigVectorField random_shape_field(int nterms, uint64_t seed, int cap) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ki(0, cap), ci(-5, 5), si(0, 1);
    TrigVectorField acc;
    for (int t = 0; t < nterms; ++t) {
        ShapeTerm st;
        st.shape = si(rng) ? Shape::ZShape : Shape::YShape;
        st.k = {ki(rng), ki(rng), ki(rng)};
        st.z = {rat(ci(rng)), rat(ci(rng)), rat(ci(rng), 1 + si(rng))};
        TrigVectorField f = realize_shape(st);
        for (int c = 0; c < 3; ++c) acc.comp[c].add_scaled(f.comp[c], rat(1));
    }
    for (auto& c : acc.comp) c.finalize();
    return acc;
}

}  // namespace

TEST_CASE("universe: ordering deterministic, ids contiguous per mode index") {
    Universe u(3);
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(u.id(i - 1) < u.id(i));
    auto [b, e] = u.range_at({1, 1, 1});
    CHECK(e - b == 4);  // Y1, Y2, Z1, Z2
    for (int p = b; p < e; ++p) CHECK(u.id(p).k == Index3{1, 1, 1});
    CHECK(u.index_of(EigenId{Family::Z, {0, 0, 0}, 1}) >= 0);
    CHECK(u.index_of(EigenId{Family::Z, {4, 0, 0}, 1}) == -1);  // beyond cap
}

TEST_CASE("project: basis fixpoint gives a unit coefficient") {
    Universe u(2);
    Projector P(u, kMixed);
    for (const EigenId id : {EigenId{Family::Y, {1, 2, 1}, 1}, EigenId{Family::Z, {1, 1, 1}, 2},
                             EigenId{Family::Z, {2, 1, 0}, 1}, EigenId{Family::Z, {0, 0, 0}, 1}}) {
        Eigenfunction e = build(id, kMixed);
        EigenCoords c = P.project(e.field);
        REQUIRE(c.entries.size() == 1);
        CHECK(c.entries[0].first == u.index_of(id));
        CHECK(c.entries[0].second == PiRat(rat(1), 0));
    }
}

TEST_CASE("project rejects modes beyond the cap, naming the offender") {
    Universe u(2);
    Projector P(u, kMixed);
    Eigenfunction e = build(EigenId{Family::Y, {3, 1, 1}, 1}, kMixed);
    CHECK_THROWS_AS(P.project(e.field), UniverseOverflowError);
    try {
        P.project(e.field);
    } catch (const UniverseOverflowError& err) {
        CHECK(err.offending == Index3{3, 1, 1});
    }
}

TEST_CASE("expand of empty coords is zero; expand(project(e)) == e") {
    Universe u(2);
    Projector P(u, kMixed);
    CHECK(P.expand(EigenCoords{}).is_zero());
    Eigenfunction e = build(EigenId{Family::Z, {1, 2, 2}, 2}, kMixed);
    CHECK(P.expand(P.project(e.field)) == e.field);
}

TEST_CASE("two-id combinations match pointwise sums") {
    Universe u(2);
    Projector P(u, kMixed);
    Eigenfunction a = build(EigenId{Family::Y, {1, 1, 2}, 2}, kMixed);
    Eigenfunction b = build(EigenId{Family::Z, {0, 2, 1}, 1}, kMixed);
    EigenCoords c;
    c.add(u.index_of(a.id), PiRat(rat(3, 2), 0));
    c.add(u.index_of(b.id), PiRat(rat(-2, 5), 0));
    c.sort_merge();
    TrigVectorField f = P.expand(c);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> x01(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::array<double, 3> x{x01(rng), 2 * x01(rng), 3 * x01(rng)};
        auto lhs = eval(f, x, kMixed);
        auto va = eval(a.field, x, kMixed);
        auto vb = eval(b.field, x, kMixed);
        for (int i = 0; i < 3; ++i)
            CHECK(lhs[i] == doctest::Approx(1.5 * va[i] - 0.4 * vb[i]).epsilon(1e-12));
    }
}

TEST_CASE("projection idempotent and residual orthogonal on shape-family fields") {
    Universe u(4);
    Projector P(u, kMixed);
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        TrigVectorField f = random_shape_field(5, seed, 4);
        EigenCoords c = P.project(f);
        CHECK(P.project(P.expand(c)) == c);
        CHECK(divergence(P.expand(c), kMixed.exact()).is_zero());
        CHECK(P.residual_orthogonal(f));
    }
}

TEST_CASE("projection coordinates agree with numeric quadrature") {
    Universe u(2);
    Projector P(u, kMixed);
    TrigVectorField f = random_shape_field(4, 77, 2);
    EigenCoords c = P.project(f);
    REQUIRE(!c.empty());
    const int N = 48;
    const double l1 = rat_double(kMixed.L1), l2 = rat_double(kMixed.L2),
                 l3 = 2 * rat_double(kMixed.L3);
    int checked = 0;
    for (const auto& [pos, coeff] : c.entries) {
        if (checked >= 5) break;
        ++checked;
        const TrigVectorField& e = P.field(pos);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k) {
                    const std::array<double, 3> x{(i + 0.5) * l1 / N, (j + 0.5) * l2 / N,
                                                  (k + 0.5) * l3 / N};
                    auto vf = eval(f, x, kMixed);
                    auto ve = eval(e, x, kMixed);
                    num += vf[0] * ve[0] + vf[1] * ve[1] + vf[2] * ve[2];
                    den += ve[0] * ve[0] + ve[1] * ve[1] + ve[2] * ve[2];
                }
        CHECK(std::abs(num / den - coeff.to_double()) <= 1e-9 * (1.0 + std::abs(num / den)));
    }
}

TEST_CASE("rank oracle: gamma = alpha + kernel direction collapses the projected span") {
    Universe u(3);
    Projector P(u, kMixed);
    const Index3 k{1, 2, 3};
    const WVector alpha{rat(1), rat(0), rat(2)};
    const WVector kern = kernel_vector(k, kMixed);
    const WVector gamma_dep{alpha[0] + kern[0], alpha[1] + kern[1], alpha[2] + kern[2]};
    CHECK(!projected_pair_independent(alpha, gamma_dep, k, kMixed));
    CHECK(!projected_pair_spans(alpha, gamma_dep, k, P));

    const WVector gamma_ind{rat(0), rat(1), rat(0)};
    CHECK(projected_pair_independent(alpha, gamma_ind, k, kMixed));
    CHECK(projected_pair_spans(alpha, gamma_ind, k, P));
}

TEST_CASE("coords JSON lists ids with coefficients") {
    Universe u(1);
    Projector P(u, kMixed);
    Eigenfunction e = build(EigenId{Family::Y, {1, 1, 1}, 1}, kMixed);
    EigenCoords c = P.project(e.field);
    const std::string js = to_json_string(c, u);
    CHECK(js.find("\"family\": \"Y\"") != std::string::npos);
    CHECK(js.find("\"coeff\": \"1\"") != std::string::npos);
}
