#pragma once

// Shared builders for the test suites.
#include <random>
#include <string>
#include <vector>

#include "pmg/games.hpp"
#include "pmg/graph.hpp"

namespace pmgtest {

using namespace pmg;

inline std::vector<std::string> names(int n, const std::string& prefix = "") {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

// edges given as (u, v, weight) over 0-based indices
inline UndirectedCompatibilityGraph graph_of(int n,
                                             std::vector<std::tuple<int, int, Rational>> edges) {
    std::vector<Edge> es;
    for (auto& [u, v, w] : edges) es.push_back({u, v, w});
    return UndirectedCompatibilityGraph(VertexTable(names(n)), std::move(es));
}

// the running example graph: six vertices, eight weighted edges
inline UndirectedCompatibilityGraph fig1_graph() {
    return graph_of(6, {{0, 1, Rational(2)},
                        {1, 3, Rational(2)},
                        {3, 4, Rational(3)},
                        {1, 4, Rational(1)},
                        {0, 2, Rational(1)},
                        {2, 4, Rational(3)},
                        {2, 5, Rational(2)},
                        {4, 5, Rational(2)}});
}

inline DirectedCompatibilityGraph example2_directed() {
    std::vector<Arc> arcs = {{0, 1, Rational(1)}, {1, 0, Rational(1)}, {1, 4, Rational(1)},
                             {4, 1, Rational(3)}, {1, 3, Rational(2)}, {4, 0, Rational(2)},
                             {4, 3, Rational(1)}, {3, 4, Rational(1)}, {0, 2, Rational(5)}};
    return DirectedCompatibilityGraph(VertexTable({"i1", "i2", "i3", "j1", "j2"}), std::move(arcs));
}

inline PartitionedGame example2_game(bool uniform) {
    return PartitionedGame::from_directed(example2_directed(),
                                          Partition({{0, 1, 2}, {3, 4}}, 5), uniform);
}

inline PartitionedGame triangle_game() {
    return PartitionedGame::from_undirected(
        graph_of(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)}}),
        Partition::singletons(3));
}

inline UndirectedCompatibilityGraph random_graph(std::mt19937_64& rng, int n, double p,
                                                 long wmax = 1) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((rng() % 1000) / 1000.0 < p)
                edges.push_back({u, v, Rational(1 + static_cast<long>(rng() % wmax))});
    return UndirectedCompatibilityGraph(VertexTable(names(n)), std::move(edges));
}

inline Partition random_partition(std::mt19937_64& rng, int n, int max_classes) {
    while (true) {
        int nc = 1 + static_cast<int>(rng() % max_classes);
        std::vector<std::vector<int>> classes(nc);
        for (int v = 0; v < n; ++v) classes[rng() % nc].push_back(v);
        std::vector<std::vector<int>> nonempty;
        for (auto& c : classes)
            if (!c.empty()) nonempty.push_back(c);
        if (!nonempty.empty()) return Partition(std::move(nonempty), n);
    }
}

}  // namespace pmgtest
