#include "pmg/matching.hpp"

#include "pmg/enumerate.hpp"

namespace pmg {

bool Matching::valid_in(const UndirectedCompatibilityGraph& g) const {
    std::vector<char> used(g.vertex_count(), 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) return false;
        if (!g.has_edge(u, v)) return false;
        if (used[u] || used[v]) return false;
        used[u] = used[v] = 1;
    }
    return true;
}

bool Matching::perfect_in(const UndirectedCompatibilityGraph& g) const {
    return valid_in(g) && static_cast<int>(edges.size()) * 2 == g.vertex_count();
}

Rational Matching::weight_in(const UndirectedCompatibilityGraph& g) const {
    Rational total;
    for (auto [u, v] : edges) {
        auto w = g.edge_weight(u, v);
        if (!w) throw std::invalid_argument("matching edge not present in graph");
        total += *w;
    }
    return total;
}

namespace {

std::vector<WeightedEdgeIn<Rational>> edge_list(const UndirectedCompatibilityGraph& g) {
    std::vector<WeightedEdgeIn<Rational>> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
    return edges;
}

}  // namespace

SolveResult<Rational> max_weight_matching(const UndirectedCompatibilityGraph& g) {
    return max_weight_matching<Rational>(g.vertex_count(), edge_list(g));
}

std::optional<SolveResult<Rational>> max_weight_perfect_matching(
    const UndirectedCompatibilityGraph& g) {
    return max_weight_perfect_matching<Rational>(g.vertex_count(), edge_list(g));
}

std::optional<std::pair<long, long>> Interval::normalized(int size) const {
    Rational a = lo, b = hi;
    mpz_class lo_z = a.ceil();
    if (lo_open && a.is_integer()) lo_z += 1;
    mpz_class hi_z = b.floor();
    if (hi_open && b.is_integer()) hi_z -= 1;
    if (lo_z < 0) lo_z = 0;
    if (hi_z > size) hi_z = size;
    if (lo_z > hi_z) return std::nullopt;
    return std::make_pair(lo_z.get_si(), hi_z.get_si());
}

std::optional<Matching> interval_constrained_optimal_matching(const UndirectedCompatibilityGraph& g,
                                                              const Partition& partition,
                                                              const IntervalConstraints& constraints) {
    auto base = max_weight_matching(g);
    return interval_constrained_optimal_matching<Rational>(g.vertex_count(), edge_list(g),
                                                           partition.classes(), constraints,
                                                           base.total);
}

void enumerate_optimal_matchings(const UndirectedCompatibilityGraph& g,
                                 const std::function<void(const Matching&, const Rational&)>& yield,
                                 EnumerateOptions opt) {
    // integer weights of moderate size scan much faster in machine arithmetic
    bool small_integers = true;
    long magnitude = 0;
    for (const Edge& e : g.edges()) {
        mpz_class num = e.weight.numerator();
        if (!e.weight.is_integer() || !num.fits_slong_p() || std::labs(num.get_si()) >= 1'000'000) {
            small_integers = false;
            break;
        }
        magnitude += std::labs(num.get_si());
    }
    if (small_integers && magnitude < (1L << 40)) {
        std::vector<WeightedEdgeIn<std::int64_t>> edges;
        edges.reserve(g.edges().size());
        for (const Edge& e : g.edges())
            edges.push_back({e.u, e.v, e.weight.numerator().get_si()});
        enumerate_optimal_matchings<std::int64_t>(
            g.vertex_count(), edges,
            [&](const Matching& m, const std::int64_t& w) { yield(m, Rational(w)); }, opt);
        return;
    }
    enumerate_optimal_matchings<Rational>(g.vertex_count(), edge_list(g), yield, opt);
}

}  // namespace pmg
