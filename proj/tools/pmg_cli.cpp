// Command-line front end: parse instances, dispatch to the solvers, emit
// machine-readable JSON. Exit codes: 0 success, 1 negative mathematical
// answer (infeasible / empty core / none), 2 error.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmg/core_solver.hpp"
#include "pmg/enumerate.hpp"
#include "pmg/hardness.hpp"
#include "pmg/json_io.hpp"
#include "pmg/lexmin.hpp"
#include "pmg/reductions.hpp"
#include "pmg/simulator.hpp"

using json = nlohmann::json;
using namespace pmg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json matching_json(const UndirectedCompatibilityGraph& g, const Matching& m) {
    json edges = json::array();
    for (auto [u, v] : m.edges) edges.push_back({g.vertices().id(u), g.vertices().id(v)});
    return edges;
}

std::vector<long> parse_number_list(const std::string& csv) {
    std::vector<long> out;
    std::string token;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stol(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return out;
}

json blocking_json(const BlockingCoalition& b, int players) {
    json names = json::array();
    for (int p = 0; p < players; ++p)
        if (b.players >> p & 1) names.push_back(std::to_string(p + 1));
    return json{{"players", std::move(names)}, {"value", b.value.str()},
                {"allocated", b.allocated.str()}};
}

// Derives an optimal b-matching from an optimal matching of the expansion:
// a source edge is picked iff its gadget pair is not matched internally.
Matching optimal_b_matching(const BMatchingGame& game) {
    TutteExpansion exp = tutte_expansion(game);
    Matching expanded = max_weight_matching(exp.result.graph()).matching;
    Matching out;
    for (std::size_t e = 0; e < game.graph().edges().size(); ++e) {
        auto [iu, iv] = exp.edge_nodes[e];
        bool internal = false;
        for (auto [a, b] : expanded.edges)
            if (a == std::min(iu, iv) && b == std::max(iu, iv)) internal = true;
        if (!internal)
            out.edges.emplace_back(game.graph().edges()[e].u, game.graph().edges()[e].v);
    }
    out.normalize();
    return out;
}

int cmd_solve(const std::string& file, const std::string& mode, bool enumerate, int bound) {
    ParsedInstance inst = parse_instance_file(file);
    json out;
    if (inst.is_bmatching()) {
        BMatchingGame game = inst.to_bmatching();
        out["value"] = game.grand_value().str();
        out["matching"] = matching_json(game.graph(), optimal_b_matching(game));
        emit(out);
        return kExitOk;
    }
    PartitionedGame game = inst.is_compact() ? inst.compact->expand()
                                             : inst.to_partitioned(mode == "uniform");
    auto solved = max_weight_matching(game.graph());
    out["value"] = solved.total.str();
    out["matching"] = matching_json(game.graph(), solved.matching);
    if (enumerate) {
        EnumerateOptions opt;
        opt.vertex_bound = bound;
        json all = json::array();
        enumerate_optimal_matchings(game.graph(), [&](const Matching& m, const Rational&) {
            all.push_back(matching_json(game.graph(), m));
        }, opt);
        out["optimal_matchings"] = std::move(all);
    }
    emit(out);
    return kExitOk;
}

int cmd_lexmin(const std::string& file, const std::string& target_file, const std::string& mode,
               int bound) {
    ParsedInstance inst = parse_instance_file(file);
    PartitionedGame game = inst.is_compact() ? inst.compact->expand()
                                             : inst.to_partitioned(mode == "uniform");
    Allocation target = parse_allocation_file(target_file, game.player_count());
    json out;
    Matching m;
    if (mode == "uniform") {
        LexminResult res = lexmin_uniform(game, target);
        m = res.matching;
        json levels = json::array();
        for (std::size_t t = 0; t < res.levels.levels.size(); ++t) {
            json players = json::array();
            for (int p : res.levels.classes[t]) players.push_back(std::to_string(p + 1));
            levels.push_back({{"d", res.levels.levels[t].str()}, {"players", std::move(players)}});
        }
        out["levels"] = std::move(levels);
    } else if (game.width() == 1) {
        m = lexmin_width1_directed(game, target);
    } else {
        EnumerateOptions opt;
        opt.vertex_bound = bound;
        m = lexmin_bruteforce(game, target, opt).first;
    }
    out["matching"] = matching_json(game.graph(), m);
    auto s = country_kidney_counts(game, m);
    json sj = json::array();
    for (long v : s) sj.push_back(v);
    out["s"] = std::move(sj);
    if (game.directed() && !game.uniform()) {
        json uj = json::array();
        for (const Rational& v : country_utilities(game, m)) uj.push_back(v.str());
        out["u"] = std::move(uj);
    }
    json dev = json::array();
    for (const Rational& d : deviation_vector(game, m, target).entries) dev.push_back(d.str());
    out["deviation"] = std::move(dev);
    emit(out);
    return kExitOk;
}

int cmd_core_check(const std::string& file, const std::string& alloc_file, const std::string& mode) {
    ParsedInstance inst = parse_instance_file(file);
    std::optional<BlockingCoalition> blocking;
    int players = 0;
    if (inst.is_bmatching()) {
        BMatchingGame game = inst.to_bmatching();
        players = game.player_count();
        Allocation x = parse_allocation_file(alloc_file, game.graph().vertices());
        blocking = check_core_membership(game, x);
    } else {
        PartitionedGame game = inst.to_partitioned(mode == "uniform");
        players = game.player_count();
        Allocation x = parse_allocation_file(alloc_file, players);
        blocking = check_core_membership(game, x);
    }
    if (!blocking) {
        emit(json{{"core", "member"}});
        return kExitOk;
    }
    emit(json{{"core", "blocked"}, {"blocking", blocking_json(*blocking, players)}});
    return kExitNegative;
}

int cmd_core_find(const std::string& file, const std::string& mode) {
    ParsedInstance inst = parse_instance_file(file);
    std::optional<Allocation> x;
    if (inst.is_bmatching()) {
        BMatchingGame game = inst.to_bmatching();
        x = find_core_allocation(game);
        if (x) {
            json values;
            for (int p = 0; p < x->size(); ++p)
                values[game.graph().vertices().id(p)] = x->values[p].str();
            emit(json{{"core", "nonempty"}, {"allocation", json{{"values", values}}}});
            return kExitOk;
        }
    } else {
        PartitionedGame game = inst.to_partitioned(mode == "uniform");
        x = find_core_allocation(game);
        if (x) {
            emit(json{{"core", "nonempty"}, {"allocation", allocation_json(*x)}});
            return kExitOk;
        }
    }
    emit(json{{"core", "empty"}});
    return kExitNegative;
}

int cmd_core_cert(const std::string& file, const std::string& lambda_file, const std::string& mode) {
    ParsedInstance inst = parse_instance_file(file);
    PartitionedGame game = inst.to_partitioned(mode == "uniform");
    BalancedCertificate cert = parse_certificate_file(lambda_file, game.player_count());
    if (verify_balanced_certificate(game, cert) == CertificateCheck::CertifiesEmpty) {
        emit(json{{"certificate", "certifies-empty"}});
        return kExitOk;
    }
    emit(json{{"certificate", "does-not-certify"}});
    return kExitNegative;
}

void write_instance_outputs(const json& instance, const json& sidecar, const std::string& out_path) {
    if (out_path.empty()) {
        emit(json{{"instance", instance}, {"player_map", sidecar}});
    } else {
        write_file(out_path, instance.dump(2) + "\n");
        write_file(out_path + ".map.json", sidecar.dump(2) + "\n");
    }
}

int cmd_reduce(const std::string& direction, const std::string& file, const std::string& out_path) {
    ParsedInstance inst = parse_instance_file(file);
    if (direction == "b2p") {
        BMatchingGame game = inst.to_bmatching();
        TutteExpansion exp = tutte_expansion(game);
        json map;
        for (int i = 0; i < exp.vertex_players; ++i)
            map["vertex:" + game.graph().vertices().id(i)] = std::to_string(i + 1);
        for (int e = 0; e < exp.edge_players; ++e) {
            const Edge& ge = game.graph().edges()[e];
            map["edge:" + game.graph().vertices().id(ge.u) + "-" + game.graph().vertices().id(ge.v)] =
                std::to_string(exp.vertex_players + e + 1);
        }
        write_instance_outputs(partitioned_instance_json(exp.result), map, out_path);
        return kExitOk;
    }
    PartitionedGame game = inst.to_partitioned(false);
    RootGadget gadget = root_gadget(game);
    json map;
    for (int p = 0; p < game.player_count(); ++p)
        map["class:" + std::to_string(p + 1)] =
            gadget.result.graph().vertices().id(gadget.root_vertex[p]);
    json instance = bmatching_instance_json(gadget.result);
    if (gadget.zero_weight_root_edges) instance["note"] = "zero-weight root edges (v(N) = 0)";
    write_instance_outputs(instance, map, out_path);
    return kExitOk;
}

int cmd_gen(const std::string& family, const std::string& a_csv, long c, const std::string& file,
            int n, double edge_density, double red_density, long k, std::uint64_t seed,
            const std::string& out_path) {
    json out;
    if (family == "partition") {
        PartitionInstance inst = gen_partition_instance(parse_number_list(a_csv));
        out = json{{"instance", partitioned_instance_json(inst.game)},
                   {"target", allocation_json(inst.target)}};
    } else if (family == "3partition") {
        ThreePartitionInstance inst = gen_3partition_instance(parse_number_list(a_csv), c);
        out = json{{"instance", partitioned_instance_json(inst.game)},
                   {"target", allocation_json(inst.target)},
                   {"meta", json{{"L", inst.big_l}, {"c", inst.c}}}};
    } else if (family == "cycles") {
        CompactCycleInstance inst = gen_compact_cycle_instance(parse_number_list(a_csv));
        out = json{{"instance", compact_instance_json(inst)},
                   {"target", allocation_json(inst.target)}};
    } else if (family == "nearly3regular") {
        ParsedInstance parsed = parse_instance_file(file);
        NearlyRegularInstance inst = gen_nearly3regular_bgame(underlying_undirected(*parsed.graph));
        json values;
        for (int v = 0; v < inst.game.player_count(); ++v)
            values[inst.game.graph().vertices().id(v)] = inst.half_capacity_allocation.values[v].str();
        out = json{{"instance", bmatching_instance_json(inst.game)},
                   {"allocation", json{{"values", values}}}};
    } else if (family == "epm") {
        RedBlueGraph rb = gen_epm_instance(n, edge_density, red_density, k, seed);
        out = json{{"instance", red_blue_instance_json(rb)}};
    } else {
        throw std::invalid_argument("unknown generator family '" + family + "'");
    }
    if (out_path.empty())
        emit(out);
    else
        write_file(out_path, out.dump(2) + "\n");
    return kExitOk;
}

int cmd_simulate(const std::string& config_file, std::optional<std::uint64_t> seed,
                 std::optional<int> rounds, const std::string& out_path,
                 const std::string& format) {
    SimConfig cfg = parse_sim_config_file(config_file);
    if (seed) cfg.seed = *seed;
    if (rounds) cfg.rounds = *rounds;
    auto traces = run_simulation(cfg);
    std::string payload =
        format == "json" ? traces_to_json(traces, cfg.seed) : traces_to_csv(traces, cfg.seed);
    if (out_path.empty())
        std::cout << payload;
    else
        write_file(out_path, payload);
    return kExitOk;
}

int cmd_epm(const std::string& file, std::optional<long> k, bool via_game, int bound) {
    ParsedInstance inst = parse_instance_file(file);
    RedBlueGraph rb = inst.to_red_blue();
    if (k) rb.k = *k;
    EnumerateOptions opt;
    opt.vertex_bound = std::max(bound, rb.graph.vertex_count());
    auto m = via_game ? solve_epm_via_game(rb, opt) : brute_force_epm(rb, opt);
    if (!m) {
        emit(json{{"answer", "none"}});
        return kExitNegative;
    }
    emit(json{{"answer", "matching"}, {"matching", matching_json(rb.graph, *m)}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioned matching games: solvers, reductions, generators, simulator"};
    app.require_subcommand(1);

    std::string file, target_file, alloc_file, lambda_file, mode = "directed", out_path;
    std::string format = "csv", family, a_csv;
    bool enumerate = false, via_game = false;
    int bound = 16, n = 8;
    long c = 0, k_val = 0;
    double edge_density = 0.5, red_density = 0.5;
    std::uint64_t gen_seed = 1;
    std::optional<std::uint64_t> sim_seed;
    std::optional<int> sim_rounds;
    std::optional<long> epm_k;

    auto* solve = app.add_subcommand("solve", "maximum weight (b-)matching value of an instance");
    solve->add_option("file", file)->required();
    solve->add_option("--mode", mode)->check(CLI::IsMember({"uniform", "directed"}));
    solve->add_flag("--enumerate", enumerate, "list every optimal matching");
    solve->add_option("--bound", bound, "enumeration vertex bound");

    auto* lexmin = app.add_subcommand("lexmin", "lexicographically minimal optimal matching");
    lexmin->add_option("file", file)->required();
    lexmin->add_option("--target", target_file)->required();
    lexmin->add_option("--mode", mode)->check(CLI::IsMember({"uniform", "directed"}));
    lexmin->add_option("--bound", bound);

    auto* core = app.add_subcommand("core", "core membership / search / certificates");
    core->require_subcommand(1);
    auto* core_check = core->add_subcommand("check");
    core_check->add_option("file", file)->required();
    core_check->add_option("--alloc", alloc_file)->required();
    core_check->add_option("--mode", mode)->check(CLI::IsMember({"uniform", "directed"}));
    auto* core_find = core->add_subcommand("find");
    core_find->add_option("file", file)->required();
    core_find->add_option("--mode", mode)->check(CLI::IsMember({"uniform", "directed"}));
    auto* core_cert = core->add_subcommand("cert");
    core_cert->add_option("file", file)->required();
    core_cert->add_option("--lambda", lambda_file)->required();
    core_cert->add_option("--mode", mode)->check(CLI::IsMember({"uniform", "directed"}));

    auto* reduce = app.add_subcommand("reduce", "game transformations");
    reduce->require_subcommand(1);
    auto* b2p = reduce->add_subcommand("b2p", "b-matching game to partitioned matching game");
    b2p->add_option("file", file)->required();
    b2p->add_option("--out", out_path);
    auto* p2b = reduce->add_subcommand("p2b", "partitioned matching game to b-matching game");
    p2b->add_option("file", file)->required();
    p2b->add_option("--out", out_path);

    auto* gen = app.add_subcommand("gen", "hardness-construction instance generators");
    gen->add_option("family", family)->required()->check(
        CLI::IsMember({"partition", "3partition", "cycles", "nearly3regular", "epm"}));
    gen->add_option("--a", a_csv, "comma separated numbers");
    gen->add_option("--c", c, "3-partition bucket sum");
    gen->add_option("--file", file, "input graph (nearly3regular)");
    gen->add_option("--n", n, "vertex count (epm)");
    gen->add_option("--edge-density", edge_density);
    gen->add_option("--red-density", red_density);
    gen->add_option("--k", k_val, "red edge target (epm)");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", out_path);

    auto* simulate = app.add_subcommand("simulate", "multi-round credit-based exchange simulation");
    simulate->add_option("config", file)->required();
    simulate->add_option("--seed", sim_seed);
    simulate->add_option("--rounds", sim_rounds);
    simulate->add_option("--out", out_path);
    simulate->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    auto* epm = app.add_subcommand("epm", "perfect matching with exactly k red edges");
    epm->add_option("file", file)->required();
    epm->add_option("-k", epm_k);
    epm->add_flag("--via-game", via_game, "route through the partitioned-game reduction");
    epm->add_option("--bound", bound);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(file, mode, enumerate, bound);
        if (lexmin->parsed()) return cmd_lexmin(file, target_file, mode, bound);
        if (core->parsed()) {
            if (core_check->parsed()) return cmd_core_check(file, alloc_file, mode);
            if (core_find->parsed()) return cmd_core_find(file, mode);
            return cmd_core_cert(file, lambda_file, mode);
        }
        if (reduce->parsed()) return cmd_reduce(b2p->parsed() ? "b2p" : "p2b", file, out_path);
        if (gen->parsed())
            return cmd_gen(family, a_csv, c, file, n, edge_density, red_density, k_val, gen_seed,
                           out_path);
        if (simulate->parsed()) return cmd_simulate(file, sim_seed, sim_rounds, out_path, format);
        if (epm->parsed()) return cmd_epm(file, epm_k, via_game, bound);
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}});
        return kExitError;
    }
    return kExitError;
}
