#include "pmg/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pmg {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

Rational rational_field(const json& j, const std::string& what) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(what + ": " + e.what());
    }
    throw ParseError(what + ": expected an integer or a \"p/q\" string");
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    out << content;
}

ParsedInstance parse_instance_text(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    ParsedInstance out;

    if (j.contains("compact_cycles")) {
        const json& cc = j.at("compact_cycles");
        if (!cc.is_array() || cc.empty()) throw ParseError("compact_cycles must be a nonempty array");
        std::vector<long> a;
        std::optional<Rational> big_l;
        for (const json& entry : cc) {
            if (!entry.is_object() || !entry.contains("a"))
                throw ParseError("compact cycle entries need an 'a' field");
            a.push_back(entry.at("a").get<long>());
            if (entry.contains("L")) {
                Rational l = rational_field(entry.at("L"), "compact cycle L");
                if (big_l && *big_l != l) throw ParseError("compact cycles must share one L");
                big_l = l;
            }
        }
        CompactCycleInstance inst = gen_compact_cycle_instance(a);
        if (big_l && *big_l != inst.big_l)
            throw ParseError("compact cycle L does not match the generator value");
        out.compact = std::move(inst);
        return out;
    }

    if (!j.contains("vertices") || !j.at("vertices").is_array())
        throw ParseError("instance needs a 'vertices' array");
    std::vector<std::string> ids;
    for (const json& v : j.at("vertices")) {
        if (!v.is_string()) throw ParseError("vertex ids must be strings");
        ids.push_back(v.get<std::string>());
    }
    VertexTable table;
    try {
        table = VertexTable(ids);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    std::vector<Arc> arcs;
    if (j.contains("arcs")) {
        for (const json& a : j.at("arcs")) {
            if (!a.is_object() || !a.contains("from") || !a.contains("to") || !a.contains("w"))
                throw ParseError("arcs need 'from', 'to' and 'w' fields");
            auto from = table.find(a.at("from").get<std::string>());
            auto to = table.find(a.at("to").get<std::string>());
            if (!from || !to) throw ParseError("arc endpoint is not a declared vertex");
            arcs.push_back({*from, *to, rational_field(a.at("w"), "arc weight")});
        }
    }
    try {
        out.graph = DirectedCompatibilityGraph(table, std::move(arcs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    if (j.contains("partition")) {
        std::vector<std::vector<int>> classes;
        for (const json& cls : j.at("partition")) {
            std::vector<int> c;
            for (const json& v : cls) {
                auto idx = table.find(v.get<std::string>());
                if (!idx) throw ParseError("partition names an unknown vertex");
                c.push_back(*idx);
            }
            classes.push_back(std::move(c));
        }
        try {
            out.partition = Partition(std::move(classes), table.size());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }

    if (j.contains("capacities")) {
        for (auto it = j.at("capacities").begin(); it != j.at("capacities").end(); ++it)
            out.capacities[it.key()] = it.value().get<int>();
    }

    if (j.contains("red")) {
        std::vector<std::pair<std::string, std::string>> red;
        for (const json& e : j.at("red")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("red edges must be id pairs");
            red.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        }
        out.red_edges = std::move(red);
    }
    if (j.contains("k")) out.k = j.at("k").get<long>();
    return out;
}

ParsedInstance parse_instance_file(const std::string& path) {
    return parse_instance_text(read_file(path));
}

PartitionedGame ParsedInstance::to_partitioned(bool uniform) const {
    if (!graph) throw ValidationError("instance has no explicit graph");
    Partition p = partition ? *partition : Partition::singletons(graph->vertex_count());
    ValidationReport report = validate_instance(*graph, p, capacities);
    if (!report.ok()) {
        std::string all;
        for (const auto& v : report.violations) all += (all.empty() ? "" : "; ") + v;
        throw ValidationError(all);
    }
    return PartitionedGame::from_directed(*graph, std::move(p), uniform);
}

BMatchingGame ParsedInstance::to_bmatching() const {
    if (!graph) throw ValidationError("instance has no explicit graph");
    ValidationReport report = validate_instance(*graph, std::nullopt, capacities);
    if (!report.ok()) {
        std::string all;
        for (const auto& v : report.violations) all += (all.empty() ? "" : "; ") + v;
        throw ValidationError(all);
    }
    UndirectedCompatibilityGraph g = underlying_undirected(*graph);
    std::vector<int> caps(g.vertex_count(), 1);
    for (const auto& [id, b] : capacities) caps[g.vertices().index_of(id)] = b;
    return BMatchingGame(std::move(g), std::move(caps));
}

RedBlueGraph ParsedInstance::to_red_blue() const {
    if (!graph) throw ValidationError("instance has no explicit graph");
    UndirectedCompatibilityGraph g = underlying_undirected(*graph);
    std::vector<char> red(g.edges().size(), 0);
    if (red_edges) {
        for (const auto& [a, b] : *red_edges) {
            int u = g.vertices().index_of(a), v = g.vertices().index_of(b);
            bool found = false;
            for (std::size_t e = 0; e < g.edges().size(); ++e)
                if ((g.edges()[e].u == std::min(u, v)) && (g.edges()[e].v == std::max(u, v))) {
                    red[e] = 1;
                    found = true;
                }
            if (!found) throw ValidationError("red edge is not an edge of the derived graph");
        }
    }
    return RedBlueGraph{std::move(g), std::move(red), k.value_or(0)};
}

namespace {

json graph_json(const DirectedCompatibilityGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const std::string& id : g.vertices().ids()) j["vertices"].push_back(id);
    j["arcs"] = json::array();
    for (const Arc& a : g.arcs())
        j["arcs"].push_back({{"from", g.vertices().id(a.from)},
                             {"to", g.vertices().id(a.to)},
                             {"w", a.weight.str()}});
    return j;
}

json partition_json(const UndirectedCompatibilityGraph& g, const Partition& p) {
    json out = json::array();
    for (const auto& cls : p.classes()) {
        json c = json::array();
        for (int v : cls) c.push_back(g.vertices().id(v));
        out.push_back(c);
    }
    return out;
}

}  // namespace

json partitioned_instance_json(const PartitionedGame& game) {
    json j = game.directed() ? graph_json(game.directed_graph())
                             : graph_json(game.graph().to_symmetric_directed());
    j["partition"] = partition_json(game.graph(), game.partition());
    return j;
}

json bmatching_instance_json(const BMatchingGame& game) {
    json j = graph_json(game.graph().to_symmetric_directed());
    json caps;
    for (int v = 0; v < game.player_count(); ++v)
        caps[game.graph().vertices().id(v)] = game.capacity(v);
    j["capacities"] = std::move(caps);
    return j;
}

json red_blue_instance_json(const RedBlueGraph& rb) {
    json j = graph_json(rb.graph.to_symmetric_directed());
    j["red"] = json::array();
    for (std::size_t e = 0; e < rb.graph.edges().size(); ++e)
        if (rb.red[e])
            j["red"].push_back({rb.graph.vertices().id(rb.graph.edges()[e].u),
                                rb.graph.vertices().id(rb.graph.edges()[e].v)});
    j["k"] = rb.k;
    return j;
}

json compact_instance_json(const CompactCycleInstance& inst) {
    json cycles = json::array();
    for (long a : inst.a) cycles.push_back({{"a", a}, {"L", inst.big_l.str()}});
    return json{{"compact_cycles", std::move(cycles)}};
}

Allocation parse_allocation_text(const std::string& text, int players) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("values"))
        throw ParseError("allocation needs a 'values' object");
    Allocation x(players);
    for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it) {
        int p = 0;
        try {
            p = std::stoi(it.key());
        } catch (...) {
            throw ParseError("player keys must be 1..n");
        }
        if (p < 1 || p > players) throw ParseError("player key out of range: " + it.key());
        x.values[p - 1] = rational_field(it.value(), "allocation value");
    }
    return x;
}

Allocation parse_allocation_file(const std::string& path, int players) {
    return parse_allocation_text(read_file(path), players);
}

Allocation parse_allocation_file(const std::string& path, const VertexTable& players) {
    json j = parse_json(read_file(path));
    if (!j.is_object() || !j.contains("values"))
        throw ParseError("allocation needs a 'values' object");
    Allocation x(players.size());
    for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it) {
        auto idx = players.find(it.key());
        if (!idx) throw ParseError("allocation names an unknown player '" + it.key() + "'");
        x.values[*idx] = rational_field(it.value(), "allocation value");
    }
    return x;
}

json allocation_json(const Allocation& x) {
    json values;
    for (int p = 0; p < x.size(); ++p) values[std::to_string(p + 1)] = x.values[p].str();
    return json{{"values", std::move(values)}};
}

BalancedCertificate parse_certificate_file(const std::string& path, int players) {
    json j = parse_json(read_file(path));
    if (!j.is_object() || !j.contains("coalitions"))
        throw ParseError("certificate needs a 'coalitions' array");
    BalancedCertificate cert;
    for (const json& entry : j.at("coalitions")) {
        if (!entry.is_object() || !entry.contains("players") || !entry.contains("weight"))
            throw ParseError("certificate entries need 'players' and 'weight'");
        PlayerSet s = 0;
        for (const json& p : entry.at("players")) {
            int idx = std::stoi(p.get<std::string>());
            if (idx < 1 || idx > players) throw ParseError("certificate player out of range");
            s |= PlayerSet(1) << (idx - 1);
        }
        cert.weights.emplace_back(s, rational_field(entry.at("weight"), "certificate weight"));
    }
    return cert;
}

SimConfig parse_sim_config_file(const std::string& path) {
    json j = parse_json(read_file(path));
    if (!j.is_object()) throw ParseError("simulation config must be a JSON object");
    SimConfig cfg;
    if (j.contains("countries")) cfg.countries = j.at("countries").get<int>();
    if (j.contains("initial_pool")) {
        if (j.at("initial_pool").is_array())
            cfg.initial_pool = j.at("initial_pool").get<std::vector<int>>();
        else
            cfg.initial_pool = {j.at("initial_pool").get<int>()};
    }
    if (j.contains("arrival_rate")) cfg.arrival_rate = j.at("arrival_rate").get<double>();
    if (j.contains("compat_prob")) cfg.compat_prob = j.at("compat_prob").get<double>();
    if (j.contains("rounds")) cfg.rounds = j.at("rounds").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("epsilon")) cfg.epsilon = rational_field(j.at("epsilon"), "epsilon");
    if (j.contains("concept")) {
        std::string c = j.at("concept").get<std::string>();
        if (c == "shapley")
            cfg.solution_concept = SimConfig::Concept::kShapley;
        else if (c == "equal-split")
            cfg.solution_concept = SimConfig::Concept::kEqualSplit;
        else
            throw ParseError("unknown solution concept '" + c + "'");
    }
    if (j.contains("rule")) {
        std::string r = j.at("rule").get<std::string>();
        if (r == "lexmin")
            cfg.rule = SimConfig::Rule::kLexmin;
        else if (r == "minimal-bruteforce")
            cfg.rule = SimConfig::Rule::kMinimalBruteforce;
        else
            throw ParseError("unknown matching rule '" + r + "'");
    }
    if (j.contains("mode")) {
        std::string m = j.at("mode").get<std::string>();
        if (m == "uniform")
            cfg.mode = SimConfig::Mode::kUniform;
        else if (m == "directed")
            cfg.mode = SimConfig::Mode::kDirected;
        else
            throw ParseError("unknown mode '" + m + "'");
    }
    return cfg;
}

std::string traces_to_json(const std::vector<RoundTrace>& traces, std::uint64_t seed) {
    json rounds = json::array();
    for (const RoundTrace& t : traces) {
        json countries = json::array();
        for (std::size_t c = 0; c < t.countries.size(); ++c) {
            const CountryRound& row = t.countries[c];
            countries.push_back({{"country", c + 1},
                                 {"y", row.y.str()},
                                 {"c_in", row.c_in.str()},
                                 {"x", row.x.str()},
                                 {"s_or_u", row.u.str()},
                                 {"c_out", row.c_out.str()}});
        }
        json matching = json::array();
        for (const auto& [a, b] : t.matching) matching.push_back({a, b});
        rounds.push_back({{"round", t.round},
                          {"value", t.value.str()},
                          {"pool_size", t.pool_size},
                          {"countries", std::move(countries)},
                          {"matching", std::move(matching)}});
    }
    json out{{"seed", seed}, {"rounds", std::move(rounds)}};
    return out.dump(2) + "\n";
}

}  // namespace pmg
