#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmg/rational.hpp"

namespace pmg {

// Vertices are opaque string identifiers at the boundary; internally every
// graph maps them to dense indices in input order, which fixes all
// tie-breaking and makes runs reproducible.
class VertexTable {
public:
    VertexTable() = default;
    explicit VertexTable(std::vector<std::string> ids);

    int size() const { return static_cast<int>(ids_.size()); }
    const std::string& id(int index) const { return ids_.at(index); }
    const std::vector<std::string>& ids() const { return ids_; }
    int index_of(const std::string& id) const;          // throws on unknown id
    std::optional<int> find(const std::string& id) const;

private:
    std::vector<std::string> ids_;
    std::map<std::string, int> index_;
};

struct Arc {
    int from = 0;
    int to = 0;
    Rational weight;
};

struct Edge {
    int u = 0;  // u < v always
    int v = 0;
    Rational weight;
};

class DirectedCompatibilityGraph {
public:
    DirectedCompatibilityGraph() = default;
    // Throws std::invalid_argument on self-loops or duplicate ordered pairs.
    // Nonpositive weights are accepted structurally; validate_instance reports them.
    DirectedCompatibilityGraph(VertexTable vertices, std::vector<Arc> arcs);

    const VertexTable& vertices() const { return vertices_; }
    int vertex_count() const { return vertices_.size(); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::optional<Rational> arc_weight(int from, int to) const;

private:
    VertexTable vertices_;
    std::vector<Arc> arcs_;
    std::map<std::pair<int, int>, Rational> arc_map_;
};

class UndirectedCompatibilityGraph {
public:
    UndirectedCompatibilityGraph() = default;
    DirectedCompatibilityGraph to_symmetric_directed() const;  // halves each edge weight onto two arcs
    UndirectedCompatibilityGraph(VertexTable vertices, std::vector<Edge> edges);

    const VertexTable& vertices() const { return vertices_; }
    int vertex_count() const { return vertices_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<Rational> edge_weight(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_weight(u, v).has_value(); }

private:
    VertexTable vertices_;
    std::vector<Edge> edges_;
    std::map<std::pair<int, int>, Rational> edge_map_;
};

// Partition of the vertex set into nonempty classes V_1..V_n; class order is
// the player order.
class Partition {
public:
    Partition() = default;
    // classes hold vertex indices of the host graph. Throws if empty classes,
    // duplicates, or indices outside [0, vertex_count).
    Partition(std::vector<std::vector<int>> classes, int vertex_count);

    static Partition singletons(int vertex_count);  // width-1 partition

    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    const std::vector<int>& class_of(int vertex) const;
    int class_index_of(int vertex) const { return owner_.at(vertex); }
    int width() const { return width_; }
    int vertex_count() const { return static_cast<int>(owner_.size()); }
    bool covers_all() const;

private:
    std::vector<std::vector<int>> classes_;
    std::vector<int> owner_;  // vertex -> class index, -1 if uncovered
    int width_ = 0;
};

// Edge ij exists iff both arcs (i,j) and (j,i) exist; its weight is the sum
// of the two arc weights. Vertex set is unchanged.
UndirectedCompatibilityGraph underlying_undirected(const DirectedCompatibilityGraph& g);

// Keeps exactly the vertices in `keep` (indices into g) and the edges with
// both endpoints kept. Vertex order is preserved.
UndirectedCompatibilityGraph induced_subgraph(const UndirectedCompatibilityGraph& g,
                                              const std::vector<int>& keep);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_instance(const DirectedCompatibilityGraph& g,
                                   const std::optional<Partition>& partition,
                                   const std::map<std::string, int>& capacities);

}  // namespace pmg
