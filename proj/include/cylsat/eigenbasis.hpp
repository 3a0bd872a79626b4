#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cylsat/trig.hpp"

namespace cylsat {

enum class Family : uint8_t { Y = 0, Z = 1 };

inline char family_char(Family f) { return f == Family::Y ? 'Y' : 'Z'; }

/// Coefficient vector of an eigenfunction, rational per component.
using WVector = std::array<Rat, 3>;

/// Identifier of one eigenfunction.
///
/// Validity rules:
///   Y: #0(k) <= 1, j in {1, 2 - #0(k)}.
///   Z with k3 >= 1: #0(k) <= 1, j in {1, 2 - #0(k)}.
///   Z with k3 == 0: j == 1 (the x3-independent modes (0,0,cos cos), including
///     the two axis families and the constant mode at k = (0,0,0)).
struct EigenId {
    Family family = Family::Y;
    Index3 k{0, 0, 0};
    int j = 1;

    bool operator==(const EigenId& o) const = default;
    bool operator<(const EigenId& o) const {
        if (k != o.k) return k < o.k;
        if (family != o.family) return family < o.family;
        return j < o.j;
    }

    std::string str() const {
        return std::string(1, family_char(family)) + "^{" + std::to_string(j) + ",(" +
               std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) +
               ")}";
    }
};

bool eigen_id_valid(const EigenId& id);

/// The weighted product x1 y1/L1 + x2 y2/L2 + x3 y3/L3.
Rat l_weighted_dot(const WVector& x, const Index3& k, const DomainLengths& L);

struct Eigenfunction {
    EigenId id;
    WVector w{};
    TrigVectorField field;
    /// lambda = nu * pi^2 * lambda_coeff, with lambda_coeff = sum (k_i/L_i)^2.
    Rat lambda_coeff;

    PiRat lambda_over_nu() const { return PiRat(lambda_coeff, 2); }
};

/// Raised when a (k, w) pair violates a family rule; the message names the rule.
struct EigenRuleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Canonical basis of {k}^perp_[L],0 for #0(k) <= 1: one or two integer-scaled
/// vectors, Euclidean-orthogonal when two, deterministic.
std::vector<WVector> perp_basis(const Index3& k, const DomainLengths& L);

/// The deterministic w used by enumeration for a valid id.
WVector canonical_w(const EigenId& id, const DomainLengths& L);

Eigenfunction build_Y(const Index3& k, const WVector& w, const DomainLengths& L, int j = 1);
Eigenfunction build_Z(const Index3& k, const WVector& w, const DomainLengths& L, int j = 1);
Eigenfunction build(const EigenId& id, const DomainLengths& L);

/// Templated field constructor shared with the mod-p pipeline.
template <class R>
TrigVectorFieldT<R> make_eigen_field(Family fam, const Index3& k, const std::array<R, 3>& w) {
    TrigVectorFieldT<R> u;
    const Factor S = Factor::Sin, C = Factor::Cos;
    if (fam == Family::Y) {
        u.comp[0].add_term({S, C, C}, k, 0, w[0]);
        u.comp[1].add_term({C, S, C}, k, 0, w[1]);
        u.comp[2].add_term({C, C, S}, k, 0, w[2]);
    } else {
        u.comp[0].add_term({S, C, S}, k, 0, w[0]);
        u.comp[1].add_term({C, S, S}, k, 0, w[1]);
        u.comp[2].add_term({C, C, C}, k, 0, R(-w[2]));
    }
    for (auto& c : u.comp) c.finalize();
    return u;
}

// ---------------------------------------------------------------------------
// Set specifications
// ---------------------------------------------------------------------------

struct SetSpec {
    enum class Kind { Thm33, Cor310, RectQ, CqC, CqR, Custom };

    Kind kind = Kind::Thm33;
    int q = 0;                    // for RectQ / CqC / CqR
    std::vector<EigenId> custom;  // for Custom

    static SetSpec thm33() { return {Kind::Thm33, 0, {}}; }
    static SetSpec cor310() { return {Kind::Cor310, 0, {}}; }
    static SetSpec rect_q(int q) { return {Kind::RectQ, q, {}}; }
    static SetSpec cq_c(int q) { return {Kind::CqC, q, {}}; }
    static SetSpec cq_r(int q) { return {Kind::CqR, q, {}}; }
    static SetSpec custom_ids(std::vector<EigenId> ids) {
        return {Kind::Custom, 0, std::move(ids)};
    }
};

struct Enumeration {
    std::vector<EigenId> ids;  // sorted, duplicate-free
    int count_y = 0;
    int count_z = 0;
    /// Nominal element count quoted for this named set, when one exists; the
    /// engine reports the computed count and flags any mismatch.
    std::optional<int> nominal_count;

    int count() const { return int(ids.size()); }
    bool nominal_mismatch() const { return nominal_count && *nominal_count != count(); }
};

Enumeration enumerate_set(const SetSpec& spec);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Exact checks: divergence-free, u.n = 0 on the four lateral faces,
/// tangential curl components vanish there, -nu Lap e = lambda e, norm > 0.
ValidationReport validate_eigenfunction(const Eigenfunction& e, const DomainLengths& L);

/// Restriction of a scalar to a lateral face x_axis = 0 or x_axis = L_axis,
/// as a trig scalar in the remaining variables.
TrigScalar restrict_to_face(const TrigScalar& s, int axis, bool at_far_end);

}  // namespace cylsat
