#include "pmg/games.hpp"

#include <stdexcept>

#include "pmg/reductions.hpp"

namespace pmg {

namespace {

UndirectedCompatibilityGraph uniformized(UndirectedCompatibilityGraph g, bool uniform) {
    if (!uniform) return g;
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.weight = Rational(1);
    return UndirectedCompatibilityGraph(g.vertices(), std::move(edges));
}

}  // namespace

PartitionedGame PartitionedGame::from_undirected(UndirectedCompatibilityGraph g, Partition p,
                                                 bool uniform) {
    if (p.vertex_count() != g.vertex_count() || !p.covers_all())
        throw std::invalid_argument("partition must cover the vertex set");
    PartitionedGame game;
    game.graph_ = uniformized(std::move(g), uniform);
    game.partition_ = std::move(p);
    game.uniform_ = uniform;
    return game;
}

PartitionedGame PartitionedGame::from_directed(DirectedCompatibilityGraph g, Partition p,
                                               bool uniform) {
    if (p.vertex_count() != g.vertex_count() || !p.covers_all())
        throw std::invalid_argument("partition must cover the vertex set");
    PartitionedGame game;
    game.graph_ = uniformized(underlying_undirected(g), uniform);
    game.directed_ = std::move(g);
    game.partition_ = std::move(p);
    game.uniform_ = uniform;
    return game;
}

const DirectedCompatibilityGraph& PartitionedGame::directed_graph() const {
    if (!directed_) throw std::logic_error("game has no directed compatibility graph");
    return *directed_;
}

void PartitionedGame::check_players(PlayerSet s) const {
    if (player_count() < 64 && (s >> player_count()) != 0)
        throw std::invalid_argument("unknown player in coalition");
}

Rational PartitionedGame::coalition_value(PlayerSet s) const {
    check_players(s);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->values.find(s);
        if (it != memo_->values.end()) return it->second;
    }
    std::vector<int> keep;
    for (int p = 0; p < player_count(); ++p)
        if (s >> p & 1)
            for (int v : partition_.classes()[p]) keep.push_back(v);
    Rational value = max_weight_matching(induced_subgraph(graph_, keep)).total;
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->values.emplace(s, value);
    return value;
}

BMatchingGame::BMatchingGame(UndirectedCompatibilityGraph g, std::vector<int> capacities,
                             bool uniform)
    : graph_(uniformized(std::move(g), uniform)), capacities_(std::move(capacities)),
      uniform_(uniform) {
    if (static_cast<int>(capacities_.size()) != graph_.vertex_count())
        throw std::invalid_argument("one capacity per vertex required");
    for (int b : capacities_)
        if (b < 1) throw std::invalid_argument("capacities must be positive");
}

int BMatchingGame::max_capacity() const {
    int b = 0;
    for (int c : capacities_) b = std::max(b, c);
    return b;
}

BMatchingGame BMatchingGame::induced(PlayerSet s) const {
    if (player_count() < 64 && (s >> player_count()) != 0)
        throw std::invalid_argument("unknown player in coalition");
    std::vector<int> keep;
    std::vector<int> caps;
    for (int v = 0; v < player_count(); ++v)
        if (s >> v & 1) {
            keep.push_back(v);
            caps.push_back(capacities_[v]);
        }
    return BMatchingGame(induced_subgraph(graph_, keep), std::move(caps), false);
}

Rational BMatchingGame::coalition_value(PlayerSet s) const {
    if (player_count() < 64 && (s >> player_count()) != 0)
        throw std::invalid_argument("unknown player in coalition");
    if (s == 0) return Rational(0);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->values.find(s);
        if (it != memo_->values.end()) return it->second;
    }
    BMatchingGame sub = induced(s);
    Rational edge_total;
    for (const Edge& e : sub.graph().edges()) edge_total += e.weight;
    TutteExpansion exp = tutte_expansion(sub);
    Rational value = max_weight_matching(exp.result.graph()).total - edge_total;
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->values.emplace(s, value);
    return value;
}

bool BMatchingGame::is_valid_b_matching(const Matching& m) const {
    std::vector<int> deg(player_count(), 0);
    for (auto [u, v] : m.edges) {
        if (!graph_.has_edge(u, v)) return false;
        ++deg[u];
        ++deg[v];
    }
    for (int v = 0; v < player_count(); ++v)
        if (deg[v] > capacities_[v]) return false;
    return true;
}

std::vector<long> country_kidney_counts(const PartitionedGame& game, const Matching& m) {
    if (!m.valid_in(game.graph())) throw std::invalid_argument("matching edge not in graph");
    std::vector<long> s(game.player_count(), 0);
    for (auto [u, v] : m.edges) {
        ++s[game.partition().class_index_of(u)];
        ++s[game.partition().class_index_of(v)];
    }
    return s;
}

std::vector<Rational> country_utilities(const PartitionedGame& game, const Matching& m) {
    if (!game.directed()) throw std::logic_error("country_utilities requires a directed game");
    if (!m.valid_in(game.graph())) throw std::invalid_argument("matching edge not in graph");
    const DirectedCompatibilityGraph& d = game.directed_graph();
    std::vector<Rational> u(game.player_count());
    for (auto [a, b] : m.edges) {
        auto wab = d.arc_weight(a, b), wba = d.arc_weight(b, a);
        if (!wab || !wba) throw std::invalid_argument("matched edge lacks one of its arcs");
        u[game.partition().class_index_of(b)] += *wab;  // receiver side of arc a->b
        u[game.partition().class_index_of(a)] += *wba;
    }
    return u;
}

std::vector<Rational> mode_utilities(const PartitionedGame& game, const Matching& m) {
    if (game.uniform() || !game.directed()) {
        auto s = country_kidney_counts(game, m);
        std::vector<Rational> u(s.size());
        for (std::size_t p = 0; p < s.size(); ++p) u[p] = Rational(s[p]);
        return u;
    }
    return country_utilities(game, m);
}

Allocation shapley_value(const std::function<Rational(PlayerSet)>& value, int n, int player_bound) {
    if (n > player_bound) throw BoundExceeded("shapley limited to n <= " + std::to_string(player_bound));
    // phi_p = sum over S not containing p of |S|!(n-|S|-1)!/n! (v(S+p) - v(S))
    std::vector<mpz_class> fact(n + 1);
    fact[0] = 1;
    for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;
    std::vector<Rational> coeff(n);
    for (int k = 0; k < n; ++k)
        coeff[k] = Rational(mpq_class(fact[k] * fact[n - k - 1], fact[n]));

    Allocation phi(n);
    PlayerSet all = full_coalition(n);
    for (PlayerSet s = 0; s <= all; ++s) {
        Rational vs = value(s);
        int size = __builtin_popcountll(s);
        for (int p = 0; p < n; ++p) {
            if (s >> p & 1) continue;
            phi.values[p] += coeff[size] * (value(s | (PlayerSet(1) << p)) - vs);
        }
        if (s == all) break;
    }
    return phi;
}

Allocation shapley_value(const PartitionedGame& game, int player_bound) {
    return shapley_value([&](PlayerSet s) { return game.coalition_value(s); },
                         game.player_count(), player_bound);
}

Allocation shapley_value(const BMatchingGame& game, int player_bound) {
    return shapley_value([&](PlayerSet s) { return game.coalition_value(s); },
                         game.player_count(), player_bound);
}

}  // namespace pmg
