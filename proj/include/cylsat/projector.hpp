#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cylsat/eigenbasis.hpp"

namespace cylsat {

/// All valid eigen ids with max(k) <= cap, in canonical order (k lex, family, j).
class Universe {
  public:
    explicit Universe(int cap);

    int cap() const { return cap_; }
    const std::vector<EigenId>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    const EigenId& id(int pos) const { return ids_[std::size_t(pos)]; }

    /// Position of an id, or -1 when absent.
    int index_of(const EigenId& id) const;

    /// Contiguous range [first, last) of positions whose ids live at index k.
    std::pair<int, int> range_at(const Index3& k) const;

  private:
    int cap_;
    std::vector<EigenId> ids_;
};

struct UniverseOverflowError : std::runtime_error {
    Index3 offending;
    explicit UniverseOverflowError(const Index3& k)
        : std::runtime_error("mode (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," +
                             std::to_string(k[2]) + ") exceeds the universe cap"),
          offending(k) {}
};

/// Sparse eigen-coordinates over a universe: (position, rational x pi^p),
/// sorted by position, no zero entries.
struct EigenCoords {
    std::vector<std::pair<int, PiRat>> entries;

    bool empty() const { return entries.empty(); }
    void add(int pos, PiRat c) {
        if (!c.zero()) entries.emplace_back(pos, std::move(c));
    }
    void sort_merge();
    bool operator==(const EigenCoords& o) const;
};

template <class R>
struct PCoeff {
    R value{};
    int pi_pow = 0;
};

/// Projection onto H by expansion in the orthogonal eigen system: one code
/// path for the exact field and its mod-p image.
template <class R>
class ProjectorT {
  public:
    ProjectorT(const Universe& u, const DomainLengths& L)
        : uni_(&u), L_(L), Lr_(L.as<R>()), fields_(u.size()), grams_(u.size()),
          slot_vecs_(u.size()), norm_invs_(u.size()) {}

    const Universe& universe() const { return *uni_; }
    const Lengths3<R>& ring_lengths() const { return Lr_; }

    const TrigVectorFieldT<R>& field(int pos) const {
        auto& slot = fields_[std::size_t(pos)];
        if (!slot) {
            const EigenId& id = uni_->id(pos);
            const WVector w = canonical_w(id, L_);
            std::array<R, 3> wr{RingOps<R>::from_rat(w[0]), RingOps<R>::from_rat(w[1]),
                                RingOps<R>::from_rat(w[2])};
            slot = make_eigen_field<R>(id.family, id.k, wr);
        }
        return *slot;
    }

    /// Shape slot-vector of a universe element: (w1, w2, w3) for the Y family,
    /// (w1, w2, -w3) for Z. Zero on dead slots by the family rules.
    const std::array<R, 3>& slot_vector(int pos) const {
        auto& slot = slot_vecs_[std::size_t(pos)];
        if (!slot) {
            const EigenId& id = uni_->id(pos);
            const WVector w = canonical_w(id, L_);
            std::array<R, 3> zeta{RingOps<R>::from_rat(w[0]), RingOps<R>::from_rat(w[1]),
                                  RingOps<R>::from_rat(w[2])};
            if (id.family == Family::Z) zeta[2] = -zeta[2];
            slot = zeta;
        }
        return *slot;
    }

    /// 1 / |slot_vector|^2; the Gram factor of the slot projection.
    const R& slot_norm_inv(int pos) const {
        auto& slot = norm_invs_[std::size_t(pos)];
        if (!slot) {
            const std::array<R, 3>& z = slot_vector(pos);
            R den{};
            for (int c = 0; c < 3; ++c) den += z[c] * z[c];
            slot = RingOps<R>::from_int(1) / den;
        }
        return *slot;
    }

    /// <e, e>, a pi-free positive value for every universe element.
    const R& gram(int pos) const {
        auto& slot = grams_[std::size_t(pos)];
        if (!slot) {
            auto [v, p] = inner_field(field(pos), field(pos), Lr_);
            if (p != 0) throw std::logic_error("gram with nonzero pi power");
            slot = v;
        }
        return *slot;
    }

    /// coords[e] = <u, e> / <e, e>; throws UniverseOverflowError when a mode
    /// of u exceeds the cap.
    std::vector<std::pair<int, PCoeff<R>>> project(const TrigVectorFieldT<R>& u) const {
        // Group terms by mode index so each candidate sees only its own slice.
        std::map<Index3, TrigVectorFieldT<R>> slices;
        for (int c = 0; c < 3; ++c)
            for (const auto& t : u.comp[c].terms()) {
                if (t.k[0] > uni_->cap() || t.k[1] > uni_->cap() || t.k[2] > uni_->cap())
                    throw UniverseOverflowError(t.k);
                slices[t.k].comp[c].add_term(t.f, t.k, t.pi_pow, t.coeff);
            }
        std::vector<std::pair<int, PCoeff<R>>> out;
        for (auto& [k, slice] : slices) {
            for (auto& c : slice.comp) c.finalize();
            auto [first, last] = uni_->range_at(k);
            for (int pos = first; pos < last; ++pos) {
                auto [num, p] = inner_field(slice, field(pos), Lr_);
                if (RingOps<R>::is_zero(num)) continue;
                out.emplace_back(pos, PCoeff<R>{num / gram(pos), p});
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    TrigVectorFieldT<R> expand(const std::vector<std::pair<int, PCoeff<R>>>& coords) const {
        TrigVectorFieldT<R> acc;
        for (const auto& [pos, c] : coords) {
            const auto& f = field(pos);
            for (int i = 0; i < 3; ++i) acc.comp[i].add_scaled(f.comp[i], c.value, c.pi_pow);
        }
        for (auto& c : acc.comp) c.finalize();
        return acc;
    }

  private:
    const Universe* uni_;
    DomainLengths L_;
    Lengths3<R> Lr_;
    mutable std::vector<std::optional<TrigVectorFieldT<R>>> fields_;
    mutable std::vector<std::optional<R>> grams_;
    mutable std::vector<std::optional<std::array<R, 3>>> slot_vecs_;
    mutable std::vector<std::optional<R>> norm_invs_;
};

/// Exact projector: the public face of the module.
class Projector {
  public:
    Projector(const Universe& u, const DomainLengths& L) : core_(u, L), L_(L) {}

    const Universe& universe() const { return core_.universe(); }
    const DomainLengths& lengths() const { return L_; }

    const TrigVectorField& field(int pos) const { return core_.field(pos); }
    PiRat gram(int pos) const { return PiRat(core_.gram(pos), 0); }

    EigenCoords project(const TrigVectorField& u) const {
        EigenCoords out;
        for (auto& [pos, c] : core_.project(u)) out.add(pos, PiRat(c.value, c.pi_pow));
        return out;
    }

    TrigVectorField expand(const EigenCoords& coords) const {
        std::vector<std::pair<int, PCoeff<Rat>>> raw;
        raw.reserve(coords.entries.size());
        for (const auto& [pos, c] : coords.entries) raw.emplace_back(pos, PCoeff<Rat>{c.value, c.pi_pow});
        return core_.expand(raw);
    }

    /// Exact check that u - expand(project(u)) is orthogonal to every
    /// universe eigenfunction touching the modes of u.
    bool residual_orthogonal(const TrigVectorField& u) const;

    const ProjectorT<Rat>& core() const { return core_; }

  private:
    ProjectorT<Rat> core_;
    DomainLengths L_;
};

std::string to_json_string(const EigenCoords& c, const Universe& u);

}  // namespace cylsat
