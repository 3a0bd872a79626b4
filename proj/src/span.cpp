#include "cylsat/span.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

namespace cylsat {

SpanPhaseStats g_span_stats;

namespace {

struct PhaseTimer {
    double* acc;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    explicit PhaseTimer(double* a) : acc(a) {}
    ~PhaseTimer() { *acc += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

/// content(row) -> 0 for empty rows
mpz_class row_content(const Subspace::IntRow& row) {
    mpz_class g = 0;
    for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

void strip_content(Subspace::IntRow& row) {
    if (row.empty()) return;
    mpz_class g = row_content(row);
    if (sgn(row.front().second) < 0) g = -g;
    if (g == 1) return;
    for (auto& [c, v] : row) v /= g;
}

/// a*x - b*y over sorted sparse rows.
Subspace::IntRow combine(const Subspace::IntRow& x, const mpz_class& a, const Subspace::IntRow& y,
                         const mpz_class& b) {
    Subspace::IntRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, -b * y[j].second);
            ++j;
        } else {
            mpz_class v = a * x[i].second - b * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

constexpr uint64_t P61 = Fp61::P;

uint64_t fp_mul(uint64_t a, uint64_t b) {
    __uint128_t m = (__uint128_t)a * b;
    uint64_t s = (uint64_t)(m & P61) + (uint64_t)(m >> 61);
    if (s >= P61) s -= P61;
    return s;
}

uint64_t fp_sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P61 - b; }
uint64_t fp_add(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    if (s >= P61) s -= P61;
    return s;
}

uint64_t fp_inv(uint64_t a) {
    Fp61 x;
    x.v = a;
    return x.inv().v;
}

uint64_t fp_of_mpz(const mpz_class& z) { return Fp61::from_mpz(z).v; }

}  // namespace

// ---------------------------------------------------------------------------
// SpanContext
// ---------------------------------------------------------------------------

SpanContext::SpanContext(int cap, const DomainLengths& L)
    : uni_(cap), L_(L), exact_(uni_, L), filter_(uni_, L), pub_(uni_, L) {}

const std::vector<std::pair<int32_t, uint64_t>>& SpanContext::pair_bracket_fp(int a, int b) {
    const uint64_t key = pair_key(a, b);
    auto it = fp_memo_.find(key);
    if (it != fp_memo_.end()) return it->second;
    PhaseTimer t(&g_span_stats.fp_pair_bracket);
    ++g_span_stats.fp_pair_count;
    std::vector<std::pair<int32_t, uint64_t>> out;
    for (const auto& [pos, c] : eigen_pair_bracket(filter_, a, b)) {
        if (c.pi_pow != 1 && !c.value.zero())
            throw std::logic_error("pair bracket: unexpected pi power");
        out.emplace_back(int32_t(pos), c.value.v);
    }
    return fp_memo_.emplace(key, std::move(out)).first->second;
}

std::vector<std::pair<int, Rat>> SpanContext::pair_bracket_exact(int a, int b) const {
    std::vector<std::pair<int, Rat>> out;
    for (auto& [pos, c] : eigen_pair_bracket(exact_, a, b)) {
        if (c.pi_pow != 1 && sgn(c.value) != 0)
            throw std::logic_error("pair bracket: unexpected pi power");
        out.emplace_back(pos, std::move(c.value));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace::Subspace(std::shared_ptr<SpanContext> ctx, SpanMode mode)
    : ctx_(std::move(ctx)), mode_(mode) {
    fp_scratch_.assign(ctx_->universe().size(), 0);
    fp_unit_.assign(ctx_->universe().size(), 0);
}

Subspace::IntRow Subspace::to_int_row(const EigenCoords& v) {
    // Rows are homogeneous in pi; the power is normalized out.
    int pi = 0;
    bool have = false;
    for (const auto& [pos, c] : v.entries) {
        if (c.zero()) continue;
        if (!have) {
            pi = c.pi_pow;
            have = true;
        } else if (c.pi_pow != pi) {
            throw std::logic_error("Subspace: vector not homogeneous in pi");
        }
    }
    mpz_class den_lcm = 1;
    for (const auto& [pos, c] : v.entries)
        if (!c.zero())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.value.get_den().get_mpz_t());
    IntRow row;
    for (const auto& [pos, c] : v.entries) {
        if (c.zero()) continue;
        Rat scaled = c.value * Rat(den_lcm);
        scaled.canonicalize();
        row.emplace_back(int32_t(pos), scaled.get_num());
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    strip_content(row);
    return row;
}

bool Subspace::insert_int_row(IntRow row, const IntRow* original) {
    PhaseTimer t(&g_span_stats.exact_insert);
    while (!row.empty()) {
        const int32_t lead = row.front().first;
        auto it = pivot_row_.find(lead);
        if (it == pivot_row_.end()) {
            strip_content(row);
            EchelonRow er{lead, std::move(row), step_};
            pivot_row_[lead] = int(rows_.size());
            Accepted acc{original ? *original : er.cols, step_};
            rows_.push_back(std::move(er));
            accepted_.push_back(std::move(acc));
            return true;
        }
        const EchelonRow& piv = rows_[std::size_t(it->second)];
        row = combine(row, piv.cols.front().second, piv.cols, row.front().second);
        strip_content(row);
    }
    return false;
}

bool Subspace::reduce_fp(FpRow& row) const {
    PhaseTimer t(&g_span_stats.fp_reduce);
    // Rows stay sorted; elimination proceeds by strictly increasing lead
    // column. Entries at saturated columns are span members and drop on sight.
    while (!row.empty()) {
        const int32_t lead = row.front().first;
        if (fp_unit_[std::size_t(lead)]) {
            row.erase(row.begin());
            continue;
        }
        auto it = fp_pivot_row_.find(lead);
        if (it == fp_pivot_row_.end()) return true;
        const FpRow& piv = fp_rows_[std::size_t(it->second)];  // pivot entry is 1
        const uint64_t f = row.front().second;
        FpRow out;
        out.reserve(row.size() + piv.size());
        std::size_t i = 1, j = 1;
        while (i < row.size() || j < piv.size()) {
            if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                if (!fp_unit_[std::size_t(row[i].first)]) out.push_back(row[i]);
                ++i;
            } else if (i == row.size() || piv[j].first < row[i].first) {
                if (!fp_unit_[std::size_t(piv[j].first)])
                    out.emplace_back(piv[j].first, fp_sub(0, fp_mul(f, piv[j].second)));
                ++j;
            } else {
                uint64_t v = fp_sub(row[i].second, fp_mul(f, piv[j].second));
                if (v && !fp_unit_[std::size_t(row[i].first)]) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        row = std::move(out);
    }
    return false;
}

void Subspace::refresh_saturation() {
    if (mode_ != SpanMode::Hybrid) return;
    // Mark columns whose unit vector reduces to zero, then prune all rows.
    for (std::size_t c = 0; c < fp_unit_.size(); ++c) {
        if (fp_unit_[c]) continue;
        if (!fp_pivot_row_.count(int32_t(c))) continue;  // cheap necessary condition
        FpRow unit{{int32_t(c), 1}};
        if (!reduce_fp(unit)) fp_unit_[c] = 1;
    }
    for (auto& row : fp_rows_) {
        FpRow pruned;
        pruned.reserve(row.size());
        pruned.push_back(row.front());  // pivot entry always stays
        for (std::size_t i = 1; i < row.size(); ++i)
            if (!fp_unit_[std::size_t(row[i].first)]) pruned.push_back(row[i]);
        row = std::move(pruned);
    }
}

void Subspace::insert_fp(FpRow row) {
    const uint64_t inv = fp_inv(row.front().second);
    for (auto& [c, v] : row) v = fp_mul(v, inv);
    fp_pivot_row_[row.front().first] = int(fp_rows_.size());
    fp_rows_.push_back(std::move(row));
}

bool Subspace::add(const EigenCoords& v) {
    IntRow row = to_int_row(v);
    if (row.empty()) return false;
    if (mode_ == SpanMode::Exact) {
        IntRow original = row;
        return insert_int_row(std::move(row), &original);
    }
    FpRow fp;
    fp.reserve(row.size());
    for (const auto& [c, z] : row) {
        uint64_t r = fp_of_mpz(z);
        if (r) fp.emplace_back(c, r);
    }
    if (!reduce_fp(fp)) return false;
    insert_fp(std::move(fp));
    IntRow original = row;
    if (!insert_int_row(std::move(row), &original))
        throw std::logic_error("Subspace: GF(p)-independent row reduced to zero over Q");
    return true;
}

bool Subspace::contains(const EigenCoords& v, int step_limit) const {
    IntRow row = to_int_row(v);
    while (!row.empty()) {
        const int32_t lead = row.front().first;
        auto it = pivot_row_.find(lead);
        if (it == pivot_row_.end()) return false;
        const EchelonRow& piv = rows_[std::size_t(it->second)];
        if (step_limit >= 0 && piv.step > step_limit) return false;
        row = combine(row, piv.cols.front().second, piv.cols, row.front().second);
        strip_content(row);
    }
    return true;
}

bool Subspace::contains_unit(int pos, int step_limit) const {
    EigenCoords v;
    v.add(pos, PiRat(Rat(1), 0));
    return contains(v, step_limit);
}

std::vector<int> Subspace::dims_by_step() const {
    std::vector<int> dims(std::size_t(step_) + 1, 0);
    for (const auto& a : accepted_) dims[std::size_t(a.step)] += 1;
    for (std::size_t j = 1; j < dims.size(); ++j) dims[j] += dims[j - 1];
    return dims;
}

bool Subspace::add_generator_bracket(int gen_pos, const Accepted& row) {
    if (mode_ == SpanMode::Exact) {
        EigenCoords v;
        std::unordered_map<int, Rat> acc;
        for (const auto& [pos, z] : row.original) {
            const Rat zr = Rat(z);
            for (const auto& [q, val] : ctx_->pair_bracket_exact(gen_pos, pos)) {
                auto [it, fresh] = acc.try_emplace(q, Rat(0));
                it->second += zr * val;
            }
        }
        for (auto& [q, val] : acc) v.add(q, PiRat(std::move(val), 1));
        v.sort_merge();
        return add(v);
    }

    // Hybrid: assemble the GF(p) image through the scratch accumulator first.
    // Saturated columns never enter; their unit vectors are span members.
    PhaseTimer ta(&g_span_stats.fp_assemble);
    for (int32_t t : fp_touched_) fp_scratch_[std::size_t(t)] = 0;
    fp_touched_.clear();
    for (const auto& [pos, z] : row.original) {
        const uint64_t zr = fp_of_mpz(z);
        if (!zr) continue;
        for (const auto& [q, val] : ctx_->pair_bracket_fp(gen_pos, pos)) {
            if (fp_unit_[std::size_t(q)]) continue;
            uint64_t& slot = fp_scratch_[std::size_t(q)];
            if (slot == 0 && val) fp_touched_.push_back(q);
            slot = fp_add(slot, fp_mul(zr, val));
        }
    }
    FpRow fp;
    fp.reserve(fp_touched_.size());
    std::sort(fp_touched_.begin(), fp_touched_.end());
    for (int32_t t : fp_touched_) {
        if (fp_scratch_[std::size_t(t)]) fp.emplace_back(t, fp_scratch_[std::size_t(t)]);
        fp_scratch_[std::size_t(t)] = 0;
    }
    fp_touched_.clear();
    if (fp.empty() || !reduce_fp(fp)) return false;
    insert_fp(std::move(fp));

    // Accepted: build the exact row and insert it (must extend the rank).
    PhaseTimer te(&g_span_stats.exact_bracket);
    EigenCoords v;
    std::unordered_map<int, Rat> acc;
    for (const auto& [pos, z] : row.original) {
        const Rat zr = Rat(z);
        for (const auto& [q, val] : ctx_->pair_bracket_exact(gen_pos, pos)) {
            auto [it, fresh] = acc.try_emplace(q, Rat(0));
            it->second += zr * val;
        }
    }
    for (auto& [q, val] : acc) v.add(q, PiRat(std::move(val), 1));
    v.sort_merge();
    IntRow irow = to_int_row(v);
    IntRow original = irow;
    if (!insert_int_row(std::move(irow), &original))
        throw std::logic_error("Subspace: GF(p) accepted a rationally dependent bracket row");
    return true;
}

// ---------------------------------------------------------------------------
// F_L and the chain
// ---------------------------------------------------------------------------

namespace {

std::vector<int> generator_positions(const std::vector<EigenId>& generators, const Universe& uni) {
    std::vector<int> pos;
    pos.reserve(generators.size());
    for (const auto& id : generators) {
        int p = uni.index_of(id);
        if (p < 0)
            throw std::invalid_argument("generator " + id.str() + " is outside the universe");
        pos.push_back(p);
    }
    std::sort(pos.begin(), pos.end());
    return pos;
}

}  // namespace

Subspace fl_step(const std::vector<EigenId>& generators, const Subspace& E) {
    Subspace out = E;
    out.advance_step();
    const auto gen_pos = generator_positions(generators, E.context().universe());
    // Snapshot: brackets run over a basis of E only, never over rows added here.
    const std::size_t base_rows = E.accepted().size();
    for (int g : gen_pos)
        for (std::size_t r = 0; r < base_rows; ++r) out.add_generator_bracket(g, E.accepted()[r]);
    return out;
}

ChainResult generate_chain(const SetSpec& spec, int jmax, int cap, const DomainLengths& L,
                           SpanMode mode) {
    const auto t0 = std::chrono::steady_clock::now();
    ChainResult res;
    res.ctx = std::make_shared<SpanContext>(cap, L);
    res.space = std::make_shared<Subspace>(res.ctx, mode);
    res.generators = enumerate_set(spec).ids;
    const Universe& uni = res.ctx->universe();

    Subspace& s = *res.space;
    for (const auto& id : res.generators) {
        const int pos = uni.index_of(id);
        if (pos < 0) throw std::invalid_argument("seed id " + id.str() + " exceeds universe cap");
        EigenCoords unit;
        unit.add(pos, PiRat(Rat(1), 0));
        s.add(unit);
    }
    res.dims.push_back(s.dim());

    const auto gen_pos = generator_positions(res.generators, uni);
    std::size_t prev_begin = 0;
    for (int j = 1; j <= jmax; ++j) {
        s.refresh_saturation();
        const std::size_t prev_end = s.accepted().size();
        s.advance_step();
        for (int g : gen_pos) {
            for (std::size_t r = prev_begin; r < prev_end; ++r) {
                // accepted() may reallocate while growing; index access stays valid.
                Subspace::Accepted row = s.accepted()[r];
                s.add_generator_bracket(g, row);
            }
        }
        prev_begin = prev_end;
        res.dims.push_back(s.dim());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

SaturationReport::PerQ verify_inclusion(const SetSpec& target, const Subspace& s, int step_limit) {
    SaturationReport::PerQ out;
    out.chain_step = step_limit;
    const Enumeration targets = enumerate_set(target);
    out.target_count = targets.count();
    const Universe& uni = s.context().universe();
    for (const auto& id : targets.ids) {
        const int pos = uni.index_of(id);
        if (pos < 0 || !s.contains_unit(pos, step_limit)) out.missing.push_back(id);
    }
    out.pass = out.missing.empty();
    return out;
}

std::string to_json_string(const SaturationReport& r) {
    nlohmann::json j;
    j["lengths"] = r.lengths;
    j["seed"] = r.seed;
    j["universe_cap"] = r.universe_cap;
    j["mode"] = r.mode == SpanMode::Exact ? "exact" : "hybrid";
    j["seconds"] = r.seconds;
    j["dims"] = r.dims;
    j["all_pass"] = r.all_pass();
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : r.verdicts) {
        nlohmann::json jv;
        jv["q"] = v.q;
        jv["chain_step"] = v.chain_step;
        jv["target_count"] = v.target_count;
        jv["pass"] = v.pass;
        nlohmann::json missing = nlohmann::json::array();
        for (const auto& id : v.missing)
            missing.push_back({{"family", std::string(1, family_char(id.family))},
                               {"k", {id.k[0], id.k[1], id.k[2]}},
                               {"j", id.j}});
        jv["missing"] = missing;
        verdicts.push_back(std::move(jv));
    }
    j["verdicts"] = std::move(verdicts);
    return j.dump(2);
}

}  // namespace cylsat
