#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pmg/graph.hpp"
#include "pmg/weights.hpp"

namespace pmg {

// A set of vertex-disjoint edges, stored normalized: u < v within an edge,
// edges sorted. Vertices are dense indices of the host graph.
struct Matching {
    std::vector<std::pair<int, int>> edges;

    Matching() = default;
    explicit Matching(std::vector<std::pair<int, int>> e) : edges(std::move(e)) { normalize(); }

    void normalize() {
        for (auto& [u, v] : edges)
            if (u > v) std::swap(u, v);
        std::sort(edges.begin(), edges.end());
    }

    std::size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }

    bool covers(int v) const {
        for (auto& [a, b] : edges)
            if (a == v || b == v) return true;
        return false;
    }

    // Disjoint-endpoint invariant plus membership of every edge in g.
    bool valid_in(const UndirectedCompatibilityGraph& g) const;
    bool perfect_in(const UndirectedCompatibilityGraph& g) const;
    Rational weight_in(const UndirectedCompatibilityGraph& g) const;

    friend bool operator==(const Matching& a, const Matching& b) { return a.edges == b.edges; }
    friend bool operator<(const Matching& a, const Matching& b) { return a.edges < b.edges; }
};

struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename W>
struct WeightedEdgeIn {
    int u = 0;
    int v = 0;
    W w{};
};

template <typename W>
struct SolveResult {
    Matching matching;
    W total{};
};

// --- generic engine entry points (blossom-based) -------------------------

// Maximum weight perfect matching; std::nullopt when no perfect matching
// exists. Deterministic for a fixed input order.
template <typename W>
std::optional<SolveResult<W>> max_weight_perfect_matching(int n,
                                                          const std::vector<WeightedEdgeIn<W>>& edges);

// Maximum weight matching via the mirror-copy reduction to the perfect case:
// two copies of the graph joined by zero-weight bridge edges.
template <typename W>
SolveResult<W> max_weight_matching(int n, const std::vector<WeightedEdgeIn<W>>& edges);

// --- Rational convenience wrappers over graph types ----------------------

SolveResult<Rational> max_weight_matching(const UndirectedCompatibilityGraph& g);
std::optional<SolveResult<Rational>> max_weight_perfect_matching(const UndirectedCompatibilityGraph& g);

// --- interval-constrained optimal matching (see lexmin and games) --------

struct Interval {
    Rational lo;
    Rational hi;
    bool lo_open = false;
    bool hi_open = false;

    static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
    static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
    static Interval point(Rational a) { return {a, a, false, false}; }

    // Largest enclosed closed interval with integer endpoints, clamped to
    // [0, size]; nullopt when empty (no integer fits).
    std::optional<std::pair<long, long>> normalized(int size) const;
};

// One interval per partition class, in class order.
struct IntervalConstraints {
    std::vector<Interval> per_class;
};

// Decides whether some maximum weight matching M of g satisfies
// s_p(M) in I_p for every class p, returning a witness. Implements the
// zero-weight extension construction: B_p and A_p helper vertex sets fully
// joined to V_p, all A-vertices pairwise joined, plus a parity vertex joined
// to the A-vertices when the total count is odd. Feasible iff the maximum
// perfect matching weight of the extension equals the maximum matching
// weight of g.
template <typename W>
std::optional<Matching> interval_constrained_optimal_matching(
    int n, const std::vector<WeightedEdgeIn<W>>& edges, const std::vector<std::vector<int>>& classes,
    const IntervalConstraints& constraints, const W& max_matching_weight);

// Rational wrapper; computes the max matching weight itself.
std::optional<Matching> interval_constrained_optimal_matching(const UndirectedCompatibilityGraph& g,
                                                              const Partition& partition,
                                                              const IntervalConstraints& constraints);

}  // namespace pmg

#include "pmg/blossom.hpp"

namespace pmg {

template <typename W>
std::optional<SolveResult<W>> max_weight_perfect_matching(
    int n, const std::vector<WeightedEdgeIn<W>>& edges) {
    detail::BlossomPM<W> solver(n, edges);
    return solver.run();
}

template <typename W>
SolveResult<W> max_weight_matching(int n, const std::vector<WeightedEdgeIn<W>>& edges) {
    // Mirror reduction: vertices v and v+n, original edges in both copies,
    // zero-weight bridges v -- v+n. A perfect matching always exists and its
    // copy-one restriction is a maximum weight matching.
    if (n == 0) return {};
    std::vector<WeightedEdgeIn<W>> doubled;
    doubled.reserve(edges.size() * 2 + n);
    for (const auto& e : edges) {
        doubled.push_back(e);
        doubled.push_back({e.u + n, e.v + n, e.w});
    }
    for (int v = 0; v < n; ++v) doubled.push_back({v, v + n, weight_zero<W>()});
    auto perfect = max_weight_perfect_matching<W>(2 * n, doubled);
    assert(perfect.has_value());
    SolveResult<W> out;
    out.total = weight_zero<W>();
    for (auto [u, v] : perfect->matching.edges) {
        if (u < n && v < n) {
            out.matching.edges.emplace_back(u, v);
            for (const auto& e : edges) {
                int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
                if (a == u && b == v) {
                    out.total += e.w;
                    break;
                }
            }
        }
    }
    out.matching.normalize();
    return out;
}

template <typename W>
std::optional<Matching> interval_constrained_optimal_matching(
    int n, const std::vector<WeightedEdgeIn<W>>& edges, const std::vector<std::vector<int>>& classes,
    const IntervalConstraints& constraints, const W& max_matching_weight) {
    if (constraints.per_class.size() != classes.size())
        throw std::invalid_argument("one interval per partition class required");

    std::vector<WeightedEdgeIn<W>> ext = edges;
    int total = n;
    std::vector<int> a_vertices;
    for (std::size_t p = 0; p < classes.size(); ++p) {
        int size = static_cast<int>(classes[p].size());
        auto norm = constraints.per_class[p].normalized(size);
        if (!norm) return std::nullopt;  // empty interval: no matching can comply
        auto [lo, hi] = *norm;
        // B_p: |V_p| - b_p vertices joined to all of V_p; A_p: b_p - a_p more.
        for (long k = 0; k < size - hi; ++k) {
            int b_vertex = total++;
            for (int v : classes[p]) ext.push_back({v, b_vertex, weight_zero<W>()});
        }
        for (long k = 0; k < hi - lo; ++k) {
            int a_vertex = total++;
            for (int v : classes[p]) ext.push_back({v, a_vertex, weight_zero<W>()});
            a_vertices.push_back(a_vertex);
        }
    }
    for (std::size_t i = 0; i < a_vertices.size(); ++i)
        for (std::size_t j = i + 1; j < a_vertices.size(); ++j)
            ext.push_back({a_vertices[i], a_vertices[j], weight_zero<W>()});
    if (total % 2 == 1) {
        int parity = total++;
        for (int a : a_vertices) ext.push_back({a, parity, weight_zero<W>()});
    }
    assert(total <= 2 * n + 1);

    auto perfect = max_weight_perfect_matching<W>(total, ext);
    if (!perfect || perfect->total != max_matching_weight) return std::nullopt;
    Matching witness;
    for (auto [u, v] : perfect->matching.edges)
        if (u < n && v < n) {
            // only original edges; class-helper edges all touch indices >= n
            witness.edges.emplace_back(u, v);
        }
    witness.normalize();
    return witness;
}

}  // namespace pmg
