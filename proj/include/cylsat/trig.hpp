#pragma once

#include <array>
#include <string>

#include "cylsat/trig_core.hpp"

namespace cylsat {

/// Cylinder (0,L1) x (0,L2) x (2 L3 / 2pi) S^1; the x3 cell has extent 2 L3.
struct DomainLengths {
    Rat L1, L2, L3;

    DomainLengths(Rat l1, Rat l2, Rat l3) : L1(std::move(l1)), L2(std::move(l2)), L3(std::move(l3)) {
        if (sgn(L1) <= 0 || sgn(L2) <= 0 || sgn(L3) <= 0)
            throw std::invalid_argument("DomainLengths: lengths must be strictly positive");
    }

    Lengths3<Rat> exact() const { return {{L1, L2, L3}}; }

    template <class R>
    Lengths3<R> as() const {
        return {{RingOps<R>::from_rat(L1), RingOps<R>::from_rat(L2), RingOps<R>::from_rat(L3)}};
    }
};

using TrigScalar = TrigScalarT<Rat>;
using TrigVectorField = TrigVectorFieldT<Rat>;
using TrigTermR = TrigTerm<Rat>;

inline PiRat inner(const TrigVectorField& a, const TrigVectorField& b, const DomainLengths& L) {
    auto [v, p] = inner_field(a, b, L.exact());
    return PiRat(v, p);
}

inline PiRat inner(const TrigScalar& a, const TrigScalar& b, const DomainLengths& L) {
    auto [v, p] = inner_scalar(a, b, L.exact());
    return PiRat(v, p);
}

/// Floating evaluation of the exact expression at a point of the closed domain.
double eval(const TrigScalar& s, const std::array<double, 3>& x, const DomainLengths& L);
std::array<double, 3> eval(const TrigVectorField& u, const std::array<double, 3>& x,
                           const DomainLengths& L);

/// Canonical textual form, one line per term; stable for golden files.
std::string to_text(const TrigScalar& s);
std::string to_text(const TrigVectorField& u);

/// JSON: component -> list of {factors:"SCS", k:[..], coeff:"p/q", pi_pow:n}.
std::string to_json_string(const TrigVectorField& u);
TrigVectorField field_from_json_string(const std::string& js);

}  // namespace cylsat
