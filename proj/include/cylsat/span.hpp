#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cylsat/bracket.hpp"

namespace cylsat {

/// How rank-growth decisions are made while a chain is generated.
///   Exact:  every inserted vector is reduced over Q.
///   Hybrid: insertions are screened in GF(p); a vector whose mod-p image is
///           independent is certainly independent over Q and is then inserted
///           exactly. A (probability ~2^-61 per decision) false dependence
///           can only shrink the generated subspace, never inflate it, and
///           membership verdicts are always computed over Q on the exact rows.
enum class SpanMode { Exact, Hybrid };

/// Shared per-run state: universe, exact and mod-p projectors, and the
/// memoized pairwise brackets the chain consumes.
class SpanContext {
  public:
    SpanContext(int cap, const DomainLengths& L);

    const Universe& universe() const { return uni_; }
    const DomainLengths& lengths() const { return L_; }
    const ProjectorT<Rat>& exact() const { return exact_; }
    const ProjectorT<Fp61>& filter() const { return filter_; }
    Projector& projector() { return pub_; }
    const Projector& projector() const { return pub_; }

    /// Projected coords of B(a,b)+B(b,a) in GF(p); memoized, symmetric key.
    const std::vector<std::pair<int32_t, uint64_t>>& pair_bracket_fp(int a, int b);

    /// Exact projected coords of the symmetrized bracket (pi power 1 or empty).
    std::vector<std::pair<int, Rat>> pair_bracket_exact(int a, int b) const;

  private:
    Universe uni_;
    DomainLengths L_;
    ProjectorT<Rat> exact_;
    ProjectorT<Fp61> filter_;
    Projector pub_;
    std::unordered_map<uint64_t, std::vector<std::pair<int32_t, uint64_t>>> fp_memo_;
};

/// A subspace of eigen-coordinate space in echelon form over Q, deterministic
/// pivot order by universe position. Rows are primitive integer vectors with
/// pi powers normalized out. Every accepted insertion also keeps the original
/// (unreduced) vector, tagged with the chain step that produced it.
class Subspace {
  public:
    using IntRow = std::vector<std::pair<int32_t, mpz_class>>;
    using FpRow = std::vector<std::pair<int32_t, uint64_t>>;

    Subspace(std::shared_ptr<SpanContext> ctx, SpanMode mode);

    const SpanContext& context() const { return *ctx_; }
    SpanMode mode() const { return mode_; }
    int dim() const { return int(rows_.size()); }
    int current_step() const { return step_; }
    void advance_step() { ++step_; }

    /// Inserts v; true iff the rank grew. Exact arithmetic in Exact mode,
    /// GF(p)-screened in Hybrid mode (exact row still stored on accept).
    bool add(const EigenCoords& v);

    /// Exact membership test over Q against rows accepted at steps <= step_limit
    /// (-1: all rows).
    bool contains(const EigenCoords& v, int step_limit = -1) const;
    bool contains_unit(int pos, int step_limit = -1) const;

    struct Accepted {
        IntRow original;  // integer-scaled original vector
        int step;
    };
    const std::vector<Accepted>& accepted() const { return accepted_; }
    std::vector<int> dims_by_step() const;

    /// Internal fast path for chain generation: bracket of a generator with an
    /// accepted row, screened and inserted. Returns true on rank growth.
    bool add_generator_bracket(int gen_pos, const Accepted& row);

    /// Marks columns whose unit vectors lie in the span and prunes them from
    /// the GF(p) rows. Entries at such columns can then be dropped on sight
    /// (subtracting span members), which short-circuits rejections once a
    /// shell of the universe saturates. Pure optimization; spans unchanged.
    void refresh_saturation();

  private:
    struct EchelonRow {
        int32_t pivot;
        IntRow cols;  // sorted, primitive, positive pivot entry
        int step;
    };

    static IntRow to_int_row(const EigenCoords& v);
    bool insert_int_row(IntRow row, const IntRow* original);
    bool reduce_fp(FpRow& row) const;  // true iff nonzero residual remains
    void insert_fp(FpRow row);

    std::shared_ptr<SpanContext> ctx_;
    SpanMode mode_;
    int step_ = 0;
    std::vector<EchelonRow> rows_;               // exact echelon, pivot-ordered map below
    std::unordered_map<int32_t, int> pivot_row_;  // pivot column -> index in rows_
    std::vector<FpRow> fp_rows_;
    std::unordered_map<int32_t, int> fp_pivot_row_;
    std::vector<uint8_t> fp_unit_;  // column's unit vector known to lie in the span
    std::vector<Accepted> accepted_;
    mutable std::vector<uint64_t> fp_scratch_;
    mutable std::vector<int32_t> fp_touched_;
};

/// F_L(E) = E + span{ B(a,b)+B(b,a) | a in generators, b in a basis of E }.
/// Generators range over the fixed set only. Throws UniverseOverflowError when
/// a bracket leaves the universe cap.
Subspace fl_step(const std::vector<EigenId>& generators, const Subspace& E);

struct ChainResult {
    std::shared_ptr<SpanContext> ctx;
    std::shared_ptr<Subspace> space;  // rows tagged by step: G^j = rows with step <= j
    std::vector<int> dims;            // dims[j] = dim G^j
    std::vector<EigenId> generators;
    double seconds = 0.0;
};

/// G^0 = span(spec), G^{j+1} = F_L(G^j), computed incrementally (brackets of a
/// step only run against rows new in the previous step; identical span to the
/// literal definition since earlier brackets are already in the subspace).
ChainResult generate_chain(const SetSpec& spec, int jmax, int cap, const DomainLengths& L,
                           SpanMode mode = SpanMode::Hybrid);

struct SaturationReport {
    struct PerQ {
        int q = 0;
        int chain_step = 0;  // the j of G^j tested against
        bool pass = false;
        std::vector<EigenId> missing;
        int target_count = 0;
    };
    std::vector<PerQ> verdicts;
    std::vector<int> dims;
    int universe_cap = 0;
    std::string lengths;
    std::string seed;
    double seconds = 0.0;
    SpanMode mode = SpanMode::Hybrid;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
};

/// Exact membership of every target eigenfunction; missing ids listed.
SaturationReport::PerQ verify_inclusion(const SetSpec& target, const Subspace& s,
                                        int step_limit = -1);

/// Coarse phase accumulators for chain tuning; read-only diagnostics.
struct SpanPhaseStats {
    double fp_pair_bracket = 0, fp_assemble = 0, fp_reduce = 0, exact_insert = 0,
           exact_bracket = 0;
    long fp_pair_count = 0;
};
extern SpanPhaseStats g_span_stats;

std::string to_json_string(const SaturationReport& r);

}  // namespace cylsat
