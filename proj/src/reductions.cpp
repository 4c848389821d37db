#include "pmg/reductions.hpp"

namespace pmg {

TutteExpansion tutte_expansion(const BMatchingGame& game) {
    const UndirectedCompatibilityGraph& g = game.graph();
    TutteExpansion exp;
    exp.source = game;
    exp.vertex_players = g.vertex_count();
    exp.edge_players = static_cast<int>(g.edges().size());

    std::vector<std::string> ids;
    std::vector<std::vector<int>> classes;
    exp.copies.assign(g.vertex_count(), {});
    for (int i = 0; i < g.vertex_count(); ++i) {
        std::vector<int> cls;
        for (int h = 1; h <= game.capacity(i); ++h) {
            exp.copies[i].push_back(static_cast<int>(ids.size()));
            cls.push_back(static_cast<int>(ids.size()));
            ids.push_back(g.vertices().id(i) + "#" + std::to_string(h));
        }
        classes.push_back(std::move(cls));
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int iu = static_cast<int>(ids.size());
        ids.push_back(g.vertices().id(e.u) + "~" + g.vertices().id(e.v));
        int iv = static_cast<int>(ids.size());
        ids.push_back(g.vertices().id(e.v) + "~" + g.vertices().id(e.u));
        exp.edge_nodes.emplace_back(iu, iv);
        classes.push_back({iu, iv});
        edges.push_back({iu, iv, e.weight});
        for (int h : exp.copies[e.u]) edges.push_back({h, iu, e.weight});
        for (int h : exp.copies[e.v]) edges.push_back({h, iv, e.weight});
    }
    int total = static_cast<int>(ids.size());
    UndirectedCompatibilityGraph expanded(VertexTable(std::move(ids)), std::move(edges));
    exp.result = PartitionedGame::from_undirected(std::move(expanded),
                                                  Partition(std::move(classes), total),
                                                  game.uniform());
    return exp;
}

Matching transform_b_matching(const TutteExpansion& exp, const Matching& m) {
    if (!exp.source.is_valid_b_matching(m))
        throw CapacityViolated("input is not a b-matching of the source game");
    const UndirectedCompatibilityGraph& g = exp.source.graph();
    std::vector<std::size_t> next_free(g.vertex_count(), 0);
    Matching out;
    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
        const Edge& e = g.edges()[ei];
        auto [iu, iv] = exp.edge_nodes[ei];
        bool matched = false;
        for (auto [a, b] : m.edges)
            if (a == e.u && b == e.v) matched = true;
        if (matched) {
            out.edges.emplace_back(iu, exp.copies[e.u][next_free[e.u]++]);
            out.edges.emplace_back(iv, exp.copies[e.v][next_free[e.v]++]);
        } else {
            out.edges.emplace_back(iu, iv);
        }
    }
    out.normalize();
    return out;
}

Allocation lift_allocation_b2p(const TutteExpansion& exp, const Allocation& x) {
    if (x.size() != exp.source.player_count())
        throw NotAnAllocation("allocation has the wrong player count");
    if (x.total() != exp.source.grand_value())
        throw NotAnAllocation("allocation does not sum to v(N)");
    Allocation lifted(exp.vertex_players + exp.edge_players);
    for (int i = 0; i < exp.vertex_players; ++i) lifted.values[i] = x.values[i];
    for (int e = 0; e < exp.edge_players; ++e)
        lifted.values[exp.vertex_players + e] = exp.source.graph().edges()[e].weight;
    return lifted;
}

RootGadget root_gadget(const PartitionedGame& game) {
    if (game.width() < 2)
        throw WidthOne("width-1 partitioned games are matching games already");
    const UndirectedCompatibilityGraph& g = game.graph();
    RootGadget gadget;
    gadget.source = game;
    gadget.source_grand_value = game.grand_value();
    Rational root_weight = gadget.source_grand_value + gadget.source_grand_value;
    gadget.zero_weight_root_edges = root_weight.is_zero();

    std::vector<std::string> ids = g.vertices().ids();
    std::vector<int> caps(g.vertex_count(), 2);
    std::vector<Edge> edges = g.edges();
    for (int p = 0; p < game.player_count(); ++p) {
        int r = static_cast<int>(ids.size());
        gadget.root_vertex.push_back(r);
        ids.push_back("root." + std::to_string(p + 1));
        caps.push_back(static_cast<int>(game.partition().classes()[p].size()));
        for (int v : game.partition().classes()[p]) edges.push_back({v, r, root_weight});
    }
    UndirectedCompatibilityGraph rg(VertexTable(std::move(ids)), std::move(edges));
    gadget.result = BMatchingGame(std::move(rg), std::move(caps), false);
    return gadget;
}

Allocation lift_allocation_p2b(const RootGadget& gadget, const Allocation& x) {
    const PartitionedGame& game = gadget.source;
    if (x.size() != game.player_count())
        throw NotAnAllocation("allocation has the wrong player count");
    Rational vn = gadget.source_grand_value;
    if (x.total() != vn) throw NotAnAllocation("allocation does not sum to v(N)");
    Allocation lifted(gadget.result.player_count());
    for (int p = 0; p < game.player_count(); ++p) {
        const auto& cls = game.partition().classes()[p];
        Rational share = x.values[p] / Rational(static_cast<long>(cls.size()));
        for (int v : cls) lifted.values[v] = share + vn;
        lifted.values[gadget.root_vertex[p]] = vn * Rational(static_cast<long>(cls.size()));
    }
    return lifted;
}

}  // namespace pmg
