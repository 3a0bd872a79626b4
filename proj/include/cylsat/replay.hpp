#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cylsat/expr.hpp"
#include "cylsat/span.hpp"

namespace cylsat {

// ---------------------------------------------------------------------------
// Step scripts: the scripted bracket quadruples, expected z-vectors, beta
// values and determinants of the induction stages, stored as JSON data
// (embedded copy by default, overridable from a file). Formulas are exact
// polynomials in q, l, n1, n2 over the lengths; comparisons are exact at
// every sampled point, which proves the identities up to the degrees present.
// ---------------------------------------------------------------------------

struct BetaCheckScript {
    std::string w;        // "wk" or "wm": whose beta, paired with the other index
    std::string pattern;  // three of '+', '-', '*' ('*' = both signs)
    std::string expected; // coefficient of pi
};

struct QuadrupleScript {
    std::string name;                  // alpha / gamma / delta
    std::string order;                 // "YkZm", "ZkYm", or "both" (ambiguous display)
    std::array<std::string, 3> k, wk, m, wm;
    std::array<std::string, 3> z_expected;  // coefficient of pi per slot
    std::string match = "exact";            // "exact" | "ray"
    std::vector<BetaCheckScript> betas;
};

struct DetScript {
    std::string name;
    std::array<std::string, 3> cols;  // "n" or a quadruple name
    std::string expected;             // coefficient of pi^2 (exact) or locus polynomial
    std::string match = "exact";      // "exact" | "locus"
};

struct EigenRayScript {
    std::array<std::string, 3> k;
    std::array<std::string, 3> z_expected;  // expected ray of the realized z-vector
};

/// A determinant display checked as pure matrix arithmetic: the columns are
/// the formulas as printed, independent of what any quadruple computes.
struct MatrixDetScript {
    std::string name;
    std::array<std::array<std::string, 3>, 3> cols;
    std::string expected;
};

struct LoopSpec {
    std::string var;
    std::string from, to;  // expressions in q
};

struct StepScript {
    std::string id;
    std::string note;
    std::array<std::string, 3> target;
    std::vector<LoopSpec> loops;  // zero, one or two loop variables
    std::vector<QuadrupleScript> quads;
    std::vector<DetScript> dets;
    std::vector<EigenRayScript> eigen_rays;
    std::vector<MatrixDetScript> matrix_dets;
    int q_min = 4;
};

std::vector<StepScript> builtin_step_scripts();
std::vector<StepScript> parse_step_scripts(const std::string& json_text);
const std::string& builtin_step_scripts_json();

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct ItemResult {
    std::string item;   // e.g. "q=4 l=2 alpha z-vector"
    bool pass = false;
    std::string detail;
};

struct StepReport {
    std::string step_id;
    std::vector<ItemResult> items;
    int checked = 0;
    bool pass() const {
        for (const auto& r : items)
            if (!r.pass) return false;
        return true;
    }
    std::vector<const ItemResult*> failures() const {
        std::vector<const ItemResult*> f;
        for (const auto& r : items)
            if (!r.pass) f.push_back(&r);
        return f;
    }
};

/// Recompute the step's quadruples at one q and one geometry and compare
/// every scripted display. Mismatches are reported, never auto-corrected.
StepReport replay(const StepScript& step, int q, const DomainLengths& L);

/// The five standard geometries: (1,1,1), the engineered degenerate
/// (1,1,17/2), and three asymmetric cells.
std::vector<DomainLengths> standard_lengths();

struct DetScanRow {
    std::string step_id;
    int q = 0;
    std::string point;     // loop assignment
    std::string lengths;
    std::vector<std::pair<std::string, Rat>> dets;  // name -> value / pi^2
    bool printed_triple = false;  // at least one printed pair determinant nonzero
    bool kernel_triple = false;   // authoritative projected-span verdict
};

struct DetScan {
    std::vector<DetScanRow> rows;
    /// Rows where the projected vectors genuinely fail to span: a finding.
    std::vector<std::size_t> span_failures;
    std::string to_csv() const;
};

DetScan scan_determinants(const std::vector<StepScript>& steps, const std::vector<int>& qs,
                          const std::vector<DomainLengths>& lengths);

// ---------------------------------------------------------------------------
// Induction walk: re-runs the generation argument stage by stage with the
// scripted quadruples, verifying that every target eigenfunction of level
// q+1 is reached by single bracket applications given what came before.
// ---------------------------------------------------------------------------

struct WalkStageReport {
    std::string stage;
    int targets = 0;
    std::vector<EigenId> missing;
    bool pass() const { return missing.empty(); }
};

struct WalkReport {
    int q = 0;
    std::string lengths;
    std::vector<WalkStageReport> stages;
    bool pass() const {
        for (const auto& s : stages)
            if (!s.pass()) return false;
        return true;
    }
};

inline const std::vector<std::string>& walk_stage_names() {
    static const std::vector<std::string> names{"r3", "r12", "axis00", "llines", "corner"};
    return names;
}

/// Stage order defaults to the scripted order; a custom order exposes the
/// dependency structure (running "axis00" first must fail).
WalkReport induction_walk(int q, const DomainLengths& L,
                          std::optional<std::vector<std::string>> stage_order = std::nullopt);

std::string to_json_string(const StepReport& r);
std::string to_json_string(const WalkReport& r);

}  // namespace cylsat
