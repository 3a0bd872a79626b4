// Command-line front door: set enumeration, saturation verification, stage
// replay, determinant scans and Galerkin experiments, with JSON/CSV outputs.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 resource/cap error.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cylsat/galerkin.hpp"
#include "cylsat/replay.hpp"
#include "cylsat/span.hpp"

using namespace cylsat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

DomainLengths parse_lengths(const std::vector<std::string>& parts) {
    if (parts.size() != 3) throw std::invalid_argument("expected three lengths");
    return DomainLengths{rat_parse(parts[0]), rat_parse(parts[1]), rat_parse(parts[2])};
}

EigenId id_from_json(const nlohmann::json& j) {
    EigenId id;
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "Y")
        id.family = Family::Y;
    else if (fam == "Z")
        id.family = Family::Z;
    else
        throw std::invalid_argument("family must be Y or Z");
    for (int i = 0; i < 3; ++i) id.k[i] = j.at("k")[std::size_t(i)].get<int>();
    id.j = j.value("j", 1);
    return id;
}

nlohmann::json id_to_json(const EigenId& id) {
    return {{"family", std::string(1, family_char(id.family))},
            {"k", {id.k[0], id.k[1], id.k[2]}},
            {"j", id.j}};
}

/// Named set selectors, plus "custom" (ids from a file) and the ablated
/// "thm33-minus-z000" used by the sensitivity checks.
SetSpec parse_set(const std::string& name, const std::string& file) {
    auto strip_q = [&](const std::string& prefix) -> std::optional<int> {
        if (name.rfind(prefix, 0) != 0) return std::nullopt;
        return std::stoi(name.substr(prefix.size()));
    };
    if (name == "thm33") return SetSpec::thm33();
    if (name == "cor310") return SetSpec::cor310();
    if (name == "thm33-minus-z000") {
        auto ids = enumerate_set(SetSpec::thm33()).ids;
        std::erase_if(ids, [](const EigenId& id) {
            return id.family == Family::Z && id.k == Index3{0, 0, 0};
        });
        return SetSpec::custom_ids(std::move(ids));
    }
    if (auto q = strip_q("rect-q")) return SetSpec::rect_q(*q);
    if (auto q = strip_q("cq-c")) return SetSpec::cq_c(*q);
    if (auto q = strip_q("cq-r")) return SetSpec::cq_r(*q);
    if (name == "custom") {
        if (file.empty()) throw std::invalid_argument("--file required for custom sets");
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open " + file);
        nlohmann::json j;
        in >> j;
        std::vector<EigenId> ids;
        for (const auto& je : j) ids.push_back(id_from_json(je));
        return SetSpec::custom_ids(std::move(ids));
    }
    throw std::invalid_argument("unknown set '" + name + "'");
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    out << text;
}

int cmd_enumerate(const std::string& set_name, const std::string& file, const std::string& out) {
    Enumeration e = enumerate_set(parse_set(set_name, file));
    nlohmann::json j;
    j["set"] = set_name;
    j["count"] = e.count();
    j["count_y"] = e.count_y;
    j["count_z"] = e.count_z;
    if (e.nominal_count) {
        j["nominal_count"] = *e.nominal_count;
        j["nominal_mismatch"] = e.nominal_mismatch();
        if (e.nominal_mismatch())
            j["note"] = "literal set enumeration differs from the quoted element count";
    }
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& id : e.ids) ids.push_back(id_to_json(id));
    j["ids"] = std::move(ids);
    write_or_print(out, j.dump(2));
    return kExitOk;
}

int cmd_verify(const std::string& set_name, const std::string& file,
               const std::vector<std::string>& lengths, int qmax, int cap_arg,
               const std::string& mode_name, const std::string& out) {
    const DomainLengths L = parse_lengths(lengths);
    const SetSpec seed = parse_set(set_name, file);
    const int jmax = qmax - 1;
    int cap = cap_arg;
    if (cap == 0) {
        int seed_max = 0;
        for (const auto& id : enumerate_set(seed).ids)
            seed_max = std::max({seed_max, id.k[0], id.k[1], id.k[2]});
        cap = seed_max + jmax * seed_max;
    }
    const SpanMode mode = mode_name == "exact" ? SpanMode::Exact : SpanMode::Hybrid;

    SaturationReport rep;
    rep.universe_cap = cap;
    rep.seed = set_name;
    rep.lengths = rat_str(L.L1) + "," + rat_str(L.L2) + "," + rat_str(L.L3);
    rep.mode = mode;
    try {
        ChainResult chain = generate_chain(seed, jmax, cap, L, mode);
        rep.dims = chain.dims;
        rep.seconds = chain.seconds;
        for (int q = 4; q <= qmax; ++q) {
            auto verdict = verify_inclusion(SetSpec::cq_c(q), *chain.space, q - 1);
            verdict.q = q;
            rep.verdicts.push_back(std::move(verdict));
        }
    } catch (const UniverseOverflowError& e) {
        std::cerr << "cap " << cap << " too small: " << e.what() << "\n";
        return kExitResource;
    }
    write_or_print(out, to_json_string(rep));
    return rep.all_pass() ? kExitOk : kExitVerifyFail;
}

int cmd_replay(const std::string& step, int q_from, int q_to,
               const std::vector<std::string>& lengths, const std::string& scripts_file,
               const std::string& out) {
    std::vector<StepScript> steps;
    if (scripts_file.empty()) {
        steps = builtin_step_scripts();
    } else {
        std::ifstream in(scripts_file);
        if (!in) throw std::invalid_argument("cannot open " + scripts_file);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        steps = parse_step_scripts(text);
    }
    if (step != "all") {
        std::erase_if(steps, [&](const StepScript& s) { return s.id.rfind(step, 0) != 0; });
        if (steps.empty()) throw std::invalid_argument("no stage matches '" + step + "'");
    }
    std::vector<DomainLengths> Ls;
    if (lengths.empty())
        Ls = standard_lengths();
    else
        Ls.push_back(parse_lengths(lengths));

    nlohmann::json all = nlohmann::json::array();
    bool ok = true;
    for (const auto& s : steps)
        for (int q = q_from; q <= q_to; ++q)
            for (const auto& L : Ls) {
                StepReport r = replay(s, q, L);
                ok = ok && r.pass();
                nlohmann::json jr = nlohmann::json::parse(to_json_string(r));
                jr["q"] = q;
                jr["lengths"] = rat_str(L.L1) + "," + rat_str(L.L2) + "," + rat_str(L.L3);
                if (!s.note.empty()) jr["note"] = s.note;
                all.push_back(std::move(jr));
                std::cout << s.id << " q=" << q << " L=(" << rat_str(L.L1) << ","
                          << rat_str(L.L2) << "," << rat_str(L.L3) << ") "
                          << (r.pass() ? "pass" : "FAIL") << "\n";
            }
    write_or_print(out, all.dump(2));
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_scan(int q_from, int q_to, const std::string& out) {
    std::vector<int> qs;
    for (int q = q_from; q <= q_to; ++q) qs.push_back(q);
    DetScan scan = scan_determinants(builtin_step_scripts(), qs, standard_lengths());
    write_or_print(out, scan.to_csv());
    if (!scan.span_failures.empty()) {
        std::cerr << "projected-span failure at " << scan.span_failures.size()
                  << " grid points -- a finding, see the CSV\n";
        return kExitVerifyFail;
    }
    std::cout << "scanned " << scan.rows.size() << " grid points; every projected span holds\n";
    return kExitOk;
}

int cmd_walk(int q, const std::vector<std::string>& lengths, const std::string& order_csv,
             const std::string& out) {
    const DomainLengths L = parse_lengths(lengths);
    std::optional<std::vector<std::string>> order;
    if (!order_csv.empty()) {
        std::vector<std::string> names;
        std::stringstream ss(order_csv);
        std::string item;
        while (std::getline(ss, item, ',')) names.push_back(item);
        order = names;
    }
    WalkReport rep = induction_walk(q, L, order);
    write_or_print(out, to_json_string(rep));
    return rep.pass() ? kExitOk : kExitVerifyFail;
}

struct SimulateConfig {
    int cap = 2;
    double nu = 1.0;
    double T = 1.0;
    double dt = 0.01;
    int segments = 8;
    int max_iters = 200;
    double learning_rate = 0.05;
    uint64_t seed = 0;
    std::string generators = "cq-c1";
    nlohmann::json target;  // {id, amplitude}
    std::vector<std::string> lengths{"1", "1", "1"};
    std::vector<std::pair<EigenId, double>> u0;
};

SimulateConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    in >> j;
    SimulateConfig c;
    c.cap = j.value("cap", 2);
    c.nu = j.value("nu", 1.0);
    c.T = j.value("T", 1.0);
    c.dt = j.value("dt", 0.01);
    c.segments = j.value("segments", 8);
    c.max_iters = j.value("max_iters", 200);
    c.learning_rate = j.value("learning_rate", 0.05);
    c.seed = j.value("seed", uint64_t(0));
    c.generators = j.value("generators", std::string("cq-c1"));
    if (j.contains("lengths"))
        c.lengths = {j["lengths"][0].get<std::string>(), j["lengths"][1].get<std::string>(),
                     j["lengths"][2].get<std::string>()};
    if (j.contains("target")) c.target = j["target"];
    if (j.contains("u0"))
        for (const auto& je : j["u0"])
            c.u0.emplace_back(id_from_json(je.at("id")), je.at("value").get<double>());
    return c;
}

int cmd_simulate(const std::string& config_path, bool do_steer, const std::string& traj_out) {
    SimulateConfig cfg = load_sim_config(config_path);
    const DomainLengths L = parse_lengths(cfg.lengths);
    GalerkinSystem sys = GalerkinSystem::assemble(cfg.cap, cfg.nu, L);

    std::vector<double> u0(std::size_t(sys.dim()), 0.0);
    for (const auto& [id, value] : cfg.u0) {
        const int pos = sys.universe().index_of(id);
        if (pos < 0) throw std::invalid_argument("u0 id outside the universe");
        u0[std::size_t(pos)] = value;
    }

    if (!do_steer) {
        Trajectory tr = integrate(sys, u0, {}, cfg.T, cfg.dt);
        write_or_print(traj_out, tr.to_csv());
        std::cout << "final energy " << tr.energy.back() << ", V-norm " << tr.vnorm.back()
                  << "\n";
        return kExitOk;
    }

    if (cfg.target.is_null()) throw std::invalid_argument("steer needs a target in the config");
    const EigenId tid = id_from_json(cfg.target.at("id"));
    const double amp = cfg.target.value("amplitude", 0.1);
    std::vector<double> target(std::size_t(sys.dim()), 0.0);
    const int tpos = sys.universe().index_of(tid);
    if (tpos < 0) throw std::invalid_argument("target outside the universe");
    target[std::size_t(tpos)] = amp;

    auto basis = control_basis_g1(parse_set(cfg.generators, ""), cfg.cap, L);
    SteerOptions opt;
    opt.segments = cfg.segments;
    opt.max_iters = cfg.max_iters;
    opt.learning_rate = cfg.learning_rate;
    opt.seed = cfg.seed;
    SteerResult res = steer(sys, u0, target, cfg.T, cfg.dt, basis, opt);
    std::cout << "steer: baseline V-distance " << res.baseline << ", achieved " << res.achieved
              << " (" << (res.baseline > 0 ? 100.0 * res.achieved / res.baseline : 0.0)
              << "% of baseline, " << res.iterations << " iterations)\n";
    if (!traj_out.empty()) {
        Trajectory tr = integrate(sys, u0, res.control, cfg.T, cfg.dt);
        tr.fill_distance(sys, target);
        write_or_print(traj_out, tr.to_csv());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Stokes eigenfunction engine for the 3D cylinder: set enumeration, "
                 "saturation verification, stage replay and Galerkin steering"};
    app.require_subcommand(1);

    std::string set_name = "thm33", set_file, out;
    std::vector<std::string> lengths{"1", "1", "1"};

    auto* enumerate = app.add_subcommand("enumerate", "List a named eigenfunction set");
    enumerate->add_option("--set", set_name, "thm33|cor310|rect-qN|cq-cN|cq-rN|custom");
    enumerate->add_option("--file", set_file, "ids JSON for custom sets");
    enumerate->add_option("--out", out, "output path (default stdout)");

    int qmax = 5, cap = 0;
    std::string mode = "hybrid";
    auto* verify = app.add_subcommand("verify", "Generate the span chain and verify inclusions");
    verify->add_option("--set", set_name, "seed set");
    verify->add_option("--file", set_file, "ids JSON for custom seeds");
    verify->add_option("--lengths", lengths, "domain lengths as rationals")->expected(3);
    verify->add_option("--qmax", qmax, "verify C^q in G^{q-1} for q = 4..qmax");
    verify->add_option("--cap", cap, "universe cap (0: derived from seed and qmax)");
    verify->add_option("--mode", mode, "hybrid|exact rank decisions");
    verify->add_option("--out", out, "report path");

    std::string step = "all", scripts_file, q_range;
    int q_from = 4, q_to = 12;
    auto* replay_cmd = app.add_subcommand("replay", "Recompute scripted stage displays");
    replay_cmd->add_option("--step", step, "stage id prefix, e.g. 3.3.2, or 'all'");
    replay_cmd->add_flag("--all", "replay every stage (the default)");
    replay_cmd->add_option("--q", q_range, "range like 4..12");
    replay_cmd->add_option("--q-from", q_from, "first q");
    replay_cmd->add_option("--q-to", q_to, "last q");
    replay_cmd->add_option("--lengths", lengths, "single geometry (default: the standard five)")
        ->expected(3);
    replay_cmd->add_option("--scripts", scripts_file, "override the embedded step scripts");
    replay_cmd->add_option("--out", out, "report path");

    auto* scan = app.add_subcommand("scan", "Determinant scan across q and geometries");
    scan->add_option("--q-from", q_from, "first q");
    scan->add_option("--q-to", q_to, "last q");
    scan->add_option("--out", out, "CSV path");

    int walk_q = 4;
    std::string walk_order;
    auto* walk = app.add_subcommand("walk", "Stage-by-stage generation walk at one q");
    walk->add_option("--q", walk_q, "induction level (>= 4)");
    walk->add_option("--lengths", lengths, "domain lengths")->expected(3);
    walk->add_option("--order", walk_order, "comma-separated stage order (ablation)");
    walk->add_option("--out", out, "report path");

    std::string sim_config, steer_config, traj_out;
    auto* simulate = app.add_subcommand("simulate", "Galerkin integration / steering");
    simulate->add_option("--config", sim_config, "experiment config JSON (integrate only)");
    simulate->add_option("--steer", steer_config,
                         "experiment config JSON; runs the steering optimizer");
    simulate->add_option("--trajectory", traj_out, "trajectory CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enumerate->parsed()) return cmd_enumerate(set_name, set_file, out);
        if (verify->parsed()) return cmd_verify(set_name, set_file, lengths, qmax, cap, mode, out);
        if (replay_cmd->parsed()) {
            if (!q_range.empty()) {
                const auto dots = q_range.find("..");
                if (dots == std::string::npos) {
                    q_from = q_to = std::stoi(q_range);
                } else {
                    q_from = std::stoi(q_range.substr(0, dots));
                    q_to = std::stoi(q_range.substr(dots + 2));
                }
            }
            return cmd_replay(step, q_from, q_to,
                              replay_cmd->count("--lengths") ? lengths
                                                             : std::vector<std::string>{},
                              scripts_file, out);
        }
        if (scan->parsed()) return cmd_scan(q_from, q_to, out);
        if (walk->parsed()) return cmd_walk(walk_q, lengths, walk_order, out);
        if (simulate->parsed()) {
            const bool do_steer = !steer_config.empty();
            const std::string cfg = do_steer ? steer_config : sim_config;
            if (cfg.empty()) throw std::invalid_argument("simulate needs --config or --steer");
            return cmd_simulate(cfg, do_steer, traj_out);
        }
    } catch (const UniverseOverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
