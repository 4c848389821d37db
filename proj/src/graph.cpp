#include "pmg/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pmg {

VertexTable::VertexTable(std::vector<std::string> ids) : ids_(std::move(ids)) {
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) {
        auto [it, fresh] = index_.emplace(ids_[i], i);
        if (!fresh) throw std::invalid_argument("duplicate vertex id '" + ids_[i] + "'");
    }
}

int VertexTable::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex id '" + id + "'");
    return it->second;
}

std::optional<int> VertexTable::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

DirectedCompatibilityGraph::DirectedCompatibilityGraph(VertexTable vertices, std::vector<Arc> arcs)
    : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
    for (const Arc& a : arcs_) {
        if (a.from < 0 || a.from >= vertices_.size() || a.to < 0 || a.to >= vertices_.size())
            throw std::invalid_argument("arc endpoint out of range");
        if (a.from == a.to)
            throw std::invalid_argument("self-loop at vertex '" + vertices_.id(a.from) + "'");
        auto [it, fresh] = arc_map_.emplace(std::make_pair(a.from, a.to), a.weight);
        if (!fresh)
            throw std::invalid_argument("duplicate arc " + vertices_.id(a.from) + " -> " +
                                        vertices_.id(a.to));
    }
}

std::optional<Rational> DirectedCompatibilityGraph::arc_weight(int from, int to) const {
    auto it = arc_map_.find(std::make_pair(from, to));
    if (it == arc_map_.end()) return std::nullopt;
    return it->second;
}

UndirectedCompatibilityGraph::UndirectedCompatibilityGraph(VertexTable vertices,
                                                           std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (Edge& e : edges_) {
        if (e.u < 0 || e.u >= vertices_.size() || e.v < 0 || e.v >= vertices_.size())
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("self-loop at vertex '" + vertices_.id(e.u) + "'");
        if (e.u > e.v) std::swap(e.u, e.v);
        auto [it, fresh] = edge_map_.emplace(std::make_pair(e.u, e.v), e.weight);
        if (!fresh)
            throw std::invalid_argument("duplicate edge " + vertices_.id(e.u) + " -- " +
                                        vertices_.id(e.v));
    }
}

std::optional<Rational> UndirectedCompatibilityGraph::edge_weight(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = edge_map_.find(std::make_pair(u, v));
    if (it == edge_map_.end()) return std::nullopt;
    return it->second;
}

DirectedCompatibilityGraph UndirectedCompatibilityGraph::to_symmetric_directed() const {
    std::vector<Arc> arcs;
    arcs.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
        Rational h = e.weight.half();
        arcs.push_back({e.u, e.v, h});
        arcs.push_back({e.v, e.u, h});
    }
    return DirectedCompatibilityGraph(vertices_, std::move(arcs));
}

Partition::Partition(std::vector<std::vector<int>> classes, int vertex_count)
    : classes_(std::move(classes)), owner_(vertex_count, -1) {
    if (classes_.empty()) throw std::invalid_argument("partition must have at least one class");
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c) {
        if (classes_[c].empty())
            throw std::invalid_argument("partition class " + std::to_string(c + 1) + " is empty");
        for (int v : classes_[c]) {
            if (v < 0 || v >= vertex_count) throw std::invalid_argument("partition vertex out of range");
            if (owner_[v] != -1)
                throw std::invalid_argument("vertex appears in two partition classes");
            owner_[v] = c;
        }
        width_ = std::max(width_, static_cast<int>(classes_[c].size()));
    }
}

Partition Partition::singletons(int vertex_count) {
    std::vector<std::vector<int>> classes(vertex_count);
    for (int v = 0; v < vertex_count; ++v) classes[v] = {v};
    return Partition(std::move(classes), vertex_count);
}

const std::vector<int>& Partition::class_of(int vertex) const {
    int c = owner_.at(vertex);
    if (c < 0) throw std::invalid_argument("vertex not covered by partition");
    return classes_[c];
}

bool Partition::covers_all() const {
    return std::all_of(owner_.begin(), owner_.end(), [](int c) { return c >= 0; });
}

UndirectedCompatibilityGraph underlying_undirected(const DirectedCompatibilityGraph& g) {
    std::vector<Edge> edges;
    for (const Arc& a : g.arcs()) {
        if (a.from > a.to) continue;  // handle each unordered pair once
        auto back = g.arc_weight(a.to, a.from);
        if (!back) continue;
        edges.push_back({a.from, a.to, a.weight + *back});
    }
    return UndirectedCompatibilityGraph(g.vertices(), std::move(edges));
}

UndirectedCompatibilityGraph induced_subgraph(const UndirectedCompatibilityGraph& g,
                                              const std::vector<int>& keep) {
    std::vector<int> remap(g.vertex_count(), -1);
    std::vector<std::string> ids;
    std::set<int> seen;
    for (int v : keep) {
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("unknown vertex in subset");
        if (!seen.insert(v).second) throw std::invalid_argument("duplicate vertex in subset");
    }
    // preserve host order
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (seen.count(v)) {
            remap[v] = static_cast<int>(ids.size());
            ids.push_back(g.vertices().id(v));
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (remap[e.u] >= 0 && remap[e.v] >= 0) edges.push_back({remap[e.u], remap[e.v], e.weight});
    return UndirectedCompatibilityGraph(VertexTable(std::move(ids)), std::move(edges));
}

ValidationReport validate_instance(const DirectedCompatibilityGraph& g,
                                   const std::optional<Partition>& partition,
                                   const std::map<std::string, int>& capacities) {
    ValidationReport report;
    for (const Arc& a : g.arcs()) {
        if (a.weight.sign() <= 0)
            report.violations.push_back("nonpositive weight on arc " + g.vertices().id(a.from) +
                                        " -> " + g.vertices().id(a.to));
    }
    if (partition) {
        if (partition->vertex_count() != g.vertex_count()) {
            report.violations.push_back("partition defined over a different vertex count");
        } else {
            for (int v = 0; v < g.vertex_count(); ++v) {
                bool covered = false;
                for (const auto& cls : partition->classes())
                    for (int u : cls)
                        if (u == v) covered = true;
                if (!covered)
                    report.violations.push_back("partition does not cover vertex '" +
                                                g.vertices().id(v) + "'");
            }
        }
    }
    for (const auto& [id, b] : capacities) {
        if (!g.vertices().find(id))
            report.violations.push_back("capacity for unknown vertex '" + id + "'");
        if (b <= 0)
            report.violations.push_back("capacity of vertex '" + id + "' must be positive");
    }
    return report;
}

}  // namespace pmg
