#include "pmg/hardness.hpp"

#include <algorithm>
#include <random>

namespace pmg {

namespace {

std::string num(long v) { return std::to_string(v); }

}  // namespace

long RedBlueGraph::red_count(const Matching& m) const {
    long count = 0;
    for (auto [u, v] : m.edges)
        for (std::size_t e = 0; e < graph.edges().size(); ++e) {
            const Edge& ge = graph.edges()[e];
            if (ge.u == u && ge.v == v && red[e]) ++count;
        }
    return count;
}

PartitionInstance gen_partition_instance(const std::vector<long>& a) {
    if (a.empty()) throw std::invalid_argument("at least one number required");
    for (long v : a)
        if (v <= 0) throw std::invalid_argument("numbers must be positive");
    std::vector<std::string> ids;
    std::vector<Arc> arcs;
    std::vector<int> v1, v2;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int vi = static_cast<int>(ids.size());
        ids.push_back("v" + num(i + 1));
        int vp = static_cast<int>(ids.size());
        ids.push_back("v" + num(i + 1) + "'");
        int vpp = static_cast<int>(ids.size());
        ids.push_back("v" + num(i + 1) + "''");
        v1.push_back(vi);
        v1.push_back(vp);
        v2.push_back(vpp);
        Rational w(a[i]);
        arcs.push_back({vi, vp, w});
        arcs.push_back({vp, vi, w});
        arcs.push_back({vi, vpp, w});
        arcs.push_back({vpp, vi, w});
    }
    int total = static_cast<int>(ids.size());
    DirectedCompatibilityGraph g(VertexTable(std::move(ids)), std::move(arcs));
    Partition partition({v1, v2}, total);
    PartitionInstance inst{PartitionedGame::from_directed(std::move(g), std::move(partition)),
                           Allocation(2), a};
    Rational sum;
    for (long v : a) sum += Rational(v);
    inst.target.values[0] = Rational(3, 2) * sum;
    inst.target.values[1] = Rational(1, 2) * sum;
    return inst;
}

ThreePartitionInstance gen_3partition_instance(const std::vector<long>& a, long c) {
    if (a.empty() || a.size() % 3 != 0)
        throw std::invalid_argument("3k numbers required");
    long k = static_cast<long>(a.size()) / 3;
    long sum = 0;
    for (long v : a) {
        if (v <= 0) throw std::invalid_argument("numbers must be positive");
        sum += v;
    }
    if (sum != k * c) throw std::invalid_argument("numbers must sum to k*c");
    for (long v : a)
        if (!(4 * v > c && 2 * v < c))
            throw std::invalid_argument("numbers must satisfy c/4 < a_i < c/2");

    long big_l = k * c + 1;
    std::vector<std::string> ids;
    std::vector<Arc> arcs;
    auto add_sym_arc = [&](int u, int v, long w) {
        arcs.push_back({u, v, Rational(w)});
        arcs.push_back({v, u, Rational(w)});
    };

    std::vector<std::vector<int>> classes(k + 1);
    std::vector<int> sources;  // 3k of them, source 3p+j belongs to country p
    for (long p = 0; p < k; ++p)
        for (int j = 0; j < 3; ++j) {
            int s = static_cast<int>(ids.size());
            ids.push_back("s" + num(p + 1) + char('a' + j));
            sources.push_back(s);
            classes[p].push_back(s);
        }
    std::vector<int> sinks;
    for (long q = 0; q < 3 * k; ++q) {
        int z = static_cast<int>(ids.size());
        ids.push_back("z" + num(q + 1));
        sinks.push_back(z);
        classes[k].push_back(z);
    }
    for (long s = 0; s < 3 * k; ++s) {
        long country = s / 3;
        for (long q = 0; q < 3 * k; ++q) {
            long len = 2 * a[q] - 1;
            int prev = sources[s];
            for (long pos = 1; pos <= len; ++pos) {
                int nxt;
                if (pos == len) {
                    nxt = sinks[q];
                } else {
                    nxt = static_cast<int>(ids.size());
                    ids.push_back("p" + num(s + 1) + "." + num(q + 1) + "." + num(pos));
                    classes[country].push_back(nxt);
                }
                add_sym_arc(prev, nxt, pos % 2 == 1 ? big_l + 1 : big_l);
                prev = nxt;
            }
        }
    }
    int total = static_cast<int>(ids.size());
    DirectedCompatibilityGraph g(VertexTable(std::move(ids)), std::move(arcs));
    Partition partition(std::move(classes), total);

    ThreePartitionInstance inst{
        PartitionedGame::from_directed(std::move(g), std::move(partition)),
        Allocation(static_cast<int>(k) + 1), a, c, big_l};
    Rational L(big_l);
    for (long p = 0; p < k; ++p)
        inst.target.values[p] = Rational(2 * c) + Rational(2) * L * Rational(sum) -
                                Rational(6) * L * Rational(k - 1) -
                                Rational(3) * (L + Rational(1));
    inst.target.values[k] = Rational(3 * k) * (L + Rational(1));
    return inst;
}

CompactCycleInstance gen_compact_cycle_instance(const std::vector<long>& a) {
    if (a.empty()) throw std::invalid_argument("at least one number required");
    CompactCycleInstance inst;
    for (long v : a) {
        if (v <= 0) throw std::invalid_argument("numbers must be positive");
        inst.a.push_back(v % 2 == 0 ? 2 * v + 1 : v);
    }
    long sum = 0;
    for (long v : inst.a) sum += v;
    inst.big_l = Rational(sum);
    long k = static_cast<long>(inst.a.size());
    // x_1 = x_2 = L * sum(a_i + 1) + sum(a_i)/2 + k/2
    Rational x = inst.big_l * Rational(sum + k) + Rational(sum, 2) + Rational(k, 2);
    inst.target = Allocation(2);
    inst.target.values[0] = x;
    inst.target.values[1] = x;
    return inst;
}

PartitionedGame CompactCycleInstance::expand() const {
    std::vector<std::string> ids;
    std::vector<Arc> arcs;
    std::vector<int> u1, u2;
    auto add_edge = [&](int u, int v, const Rational& w) {
        Rational h = w.half();
        arcs.push_back({u, v, h});
        arcs.push_back({v, u, h});
    };
    Rational L = big_l;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long ai = a[i];
        long path_len = 2 * ai + 1;  // edges per connecting path
        std::vector<int> p1, p2;
        for (long j = 0; j <= path_len; ++j) {
            p1.push_back(static_cast<int>(ids.size()));
            ids.push_back("c" + num(i + 1) + ".p" + num(j));
        }
        for (long j = 0; j <= path_len; ++j) {
            p2.push_back(static_cast<int>(ids.size()));
            ids.push_back("c" + num(i + 1) + ".q" + num(j));
        }
        u1.insert(u1.end(), p1.begin(), p1.end());
        u2.insert(u2.end(), p2.begin(), p2.end());
        add_edge(p1[0], p2[0], L);                              // e
        add_edge(p1[path_len], p2[path_len], L + Rational(1));  // e-bar
        for (long j = 1; j <= path_len; ++j) {
            Rational w1 = j == path_len ? L + Rational(1, 2)
                                        : (j % 2 == 1 ? L + Rational(1) : L);
            Rational w2 = j == path_len ? L + Rational(1, 2)
                                        : (j % 2 == 1 ? L : L + Rational(1));
            add_edge(p1[j - 1], p1[j], w1);
            add_edge(p2[j - 1], p2[j], w2);
        }
    }
    int total = static_cast<int>(ids.size());
    DirectedCompatibilityGraph g(VertexTable(std::move(ids)), std::move(arcs));
    return PartitionedGame::from_directed(std::move(g), Partition({u1, u2}, total));
}

NearlyRegularInstance gen_nearly3regular_bgame(const UndirectedCompatibilityGraph& g) {
    std::vector<std::string> ids = g.vertices().ids();
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.weight = Rational(1);
    std::vector<int> caps(g.vertex_count(), 3);
    std::vector<Rational> alloc(g.vertex_count(), Rational(3, 2));
    auto fresh = [&](const std::string& id, int cap, Rational x) {
        int v = static_cast<int>(ids.size());
        ids.push_back(id);
        caps.push_back(cap);
        alloc.push_back(std::move(x));
        return v;
    };
    for (int v = 0; v < g.vertex_count(); ++v) {
        const std::string& base = g.vertices().id(v);
        int hub_a = -1, hub_c = -1, hub_d = -1;
        std::vector<int> avj(3), cvj(3), dvj(3);
        for (int j = 0; j < 3; ++j) {
            avj[j] = fresh(base + ".a" + num(j + 1), 2, Rational(1));
            cvj[j] = fresh(base + ".c" + num(j + 1), 2, Rational(1));
            dvj[j] = fresh(base + ".d" + num(j + 1), 2, Rational(1));
        }
        hub_a = fresh(base + ".ah", 3, Rational(3, 2));
        hub_c = fresh(base + ".ch", 3, Rational(3, 2));
        hub_d = fresh(base + ".dh", 3, Rational(3, 2));
        for (int j = 0; j < 3; ++j) {
            edges.push_back({v, avj[j], Rational(1)});
            edges.push_back({avj[j], cvj[j], Rational(1)});
            edges.push_back({avj[j], dvj[j], Rational(1)});
            edges.push_back({cvj[j], dvj[j], Rational(1)});
            edges.push_back({hub_a, avj[j], Rational(1)});
            edges.push_back({hub_c, cvj[j], Rational(1)});
            edges.push_back({hub_d, dvj[j], Rational(1)});
        }
    }
    int root = fresh("root", 1, Rational(0));
    for (int v = 0; v < g.vertex_count(); ++v) edges.push_back({v, root, Rational(1)});
    int total = static_cast<int>(ids.size());
    UndirectedCompatibilityGraph gg(VertexTable(std::move(ids)), std::move(edges));
    NearlyRegularInstance inst{BMatchingGame(std::move(gg), std::move(caps), true),
                               Allocation(std::move(alloc)), root};
    return inst;
}

UndirectedCompatibilityGraph bipartite_to_nearly3regular(const UndirectedCompatibilityGraph& g) {
    // two-color check
    std::vector<int> color(g.vertex_count(), -1);
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    throw NotBipartite("input graph is not bipartite");
                }
            }
        }
    }
    std::vector<std::string> ids;
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        int offset = static_cast<int>(ids.size());
        for (int v = 0; v < g.vertex_count(); ++v)
            ids.push_back("k" + num(e + 1) + "." + g.vertices().id(v));
        int sub = static_cast<int>(ids.size());
        ids.push_back("k" + num(e + 1) + ".sub");
        for (std::size_t f = 0; f < g.edges().size(); ++f) {
            const Edge& ge = g.edges()[f];
            if (f == e) {
                edges.push_back({offset + ge.u, sub, Rational(1)});
                edges.push_back({offset + ge.v, sub, Rational(1)});
            } else {
                edges.push_back({offset + ge.u, offset + ge.v, Rational(1)});
            }
        }
    }
    return UndirectedCompatibilityGraph(VertexTable(std::move(ids)), std::move(edges));
}

std::optional<Matching> brute_force_epm(const RedBlueGraph& rb, EnumerateOptions opt) {
    if (rb.graph.vertex_count() > opt.vertex_bound)
        throw BoundExceeded("red-blue scan limited to |V| <= bound");
    std::vector<WeightedEdgeIn<std::int64_t>> edges;
    for (const Edge& e : rb.graph.edges()) edges.push_back({e.u, e.v, 1});
    std::optional<Matching> found;
    try {
        enumerate_perfect_matchings<std::int64_t>(
            rb.graph.vertex_count(), edges,
            [&](const Matching& m) {
                if (rb.red_count(m) == rb.k) {
                    found = m;
                    throw detail::StopEnumeration{};
                }
            },
            opt);
    } catch (const detail::StopEnumeration&) {
    }
    return found;
}

namespace {

struct SubdividedGame {
    PartitionedGame game;
    Allocation target;
    std::vector<std::pair<int, int>> sub_vertices;  // per source edge: (i', j')
};

SubdividedGame build_epm_game(const RedBlueGraph& rb) {
    const UndirectedCompatibilityGraph& g = rb.graph;
    std::vector<std::string> ids = g.vertices().ids();
    std::vector<Arc> arcs;
    std::vector<int> v1, v2;
    for (int v = 0; v < g.vertex_count(); ++v) v2.push_back(v);
    std::vector<std::pair<int, int>> subs;

    auto add_cycle = [&](int u, int v, const Rational& into_u, const Rational& into_v) {
        arcs.push_back({u, v, into_v});
        arcs.push_back({v, u, into_u});
    };
    long red_edges = 0, blue_edges = 0;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const Edge& ge = g.edges()[e];
        bool is_red = rb.red[e];
        (is_red ? red_edges : blue_edges)++;
        int iu = static_cast<int>(ids.size());
        ids.push_back(g.vertices().id(ge.u) + "*" + num(e + 1));
        int jv = static_cast<int>(ids.size());
        ids.push_back(g.vertices().id(ge.v) + "*" + num(e + 1));
        subs.emplace_back(iu, jv);
        if (is_red) {
            v1.push_back(iu);
            v1.push_back(jv);
            // cross edges i-i' and j'-j: subdivision side receives 2/3
            add_cycle(ge.u, iu, Rational(1, 3), Rational(2, 3));
            add_cycle(ge.v, jv, Rational(1, 3), Rational(2, 3));
            // red i'-j' edge lies inside country 1
            add_cycle(iu, jv, Rational(1, 2), Rational(1, 2));
        } else {
            v2.push_back(iu);
            v2.push_back(jv);
            add_cycle(ge.u, iu, Rational(1, 2), Rational(1, 2));
            add_cycle(ge.v, jv, Rational(1, 2), Rational(1, 2));
            add_cycle(iu, jv, Rational(1, 2), Rational(1, 2));
        }
    }
    int total = static_cast<int>(ids.size());
    DirectedCompatibilityGraph dg(VertexTable(std::move(ids)), std::move(arcs));
    SubdividedGame out{
        PartitionedGame::from_directed(std::move(dg), Partition({v1, v2}, total)),
        Allocation(2), std::move(subs)};
    // transform of a perfect matching with k red edges receives
    // u_1 = |R| + k/3 and u_2 = |B| + |V|/2 - k/3
    out.target.values[0] = Rational(red_edges) + Rational(rb.k, 3);
    out.target.values[1] =
        Rational(blue_edges) + Rational(g.vertex_count(), 2) - Rational(rb.k, 3);
    return out;
}

}  // namespace

std::optional<Matching> solve_epm_via_game(const RedBlueGraph& rb, EnumerateOptions opt) {
    if (rb.k < 0) return std::nullopt;
    if (rb.graph.vertex_count() == 0) return rb.k == 0 ? std::optional<Matching>(Matching{}) : std::nullopt;
    bool any_red = false;
    for (char r : rb.red) any_red |= r != 0;
    if (!any_red) {
        // degenerate colouring: country 1 would own no vertices, so answer
        // the k = 0 question directly
        if (rb.k != 0) return std::nullopt;
        return brute_force_epm(rb, opt);
    }
    SubdividedGame sg = build_epm_game(rb);
    opt.vertex_bound = std::max(opt.vertex_bound, sg.game.graph().vertex_count());
    auto [witness, dev] = minimal_matching_bruteforce(sg.game, sg.target, opt);
    if (!dev.is_zero()) return std::nullopt;
    // pull back: source edge is matched iff its gadget edge i'-j' is not
    Matching m;
    for (std::size_t e = 0; e < rb.graph.edges().size(); ++e) {
        auto [iu, jv] = sg.sub_vertices[e];
        bool internal = false;
        for (auto [a, b] : witness.edges)
            if (a == std::min(iu, jv) && b == std::max(iu, jv)) internal = true;
        if (!internal) m.edges.emplace_back(rb.graph.edges()[e].u, rb.graph.edges()[e].v);
    }
    m.normalize();
    if (!m.perfect_in(rb.graph) || rb.red_count(m) != rb.k)
        throw std::logic_error("zero-deviation witness must pull back to an exact perfect matching");
    return m;
}

std::optional<Matching> solve_game_via_epm(const PartitionedGame& game, const Allocation& target,
                                           const Rational& delta, EnumerateOptions opt) {
    if (game.player_count() != 2 || !game.directed())
        throw NotPerfectGame("perfect games have exactly two countries and a directed graph");
    if (target.size() != 2) throw std::invalid_argument("target has the wrong player count");
    if (delta.sign() < 0) throw std::invalid_argument("delta must be nonnegative");
    const DirectedCompatibilityGraph& d = game.directed_graph();
    const UndirectedCompatibilityGraph& g = game.graph();

    // classify edges, check the 3-sparse structure and the uniform underlying graph
    std::optional<Rational> into_v1;
    std::vector<char> red(g.edges().size(), 0);
    long red_total = 0;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const Edge& ge = g.edges()[e];
        if (ge.weight != Rational(1)) throw NotPerfectGame("underlying graph must be uniform");
        int cu = game.partition().class_index_of(ge.u);
        int cv = game.partition().class_index_of(ge.v);
        Rational w_uv = *d.arc_weight(ge.u, ge.v), w_vu = *d.arc_weight(ge.v, ge.u);
        if (cu == cv) {
            if (w_uv != Rational(1, 2) || w_vu != Rational(1, 2))
                throw NotPerfectGame("within-country arcs must both carry 1/2");
        } else {
            red[e] = 1;
            ++red_total;
            Rational into1 = cu == 0 ? w_vu : w_uv;
            if (into1 == Rational(1, 2)) throw NotPerfectGame("cross arcs must differ from 1/2");
            if (into_v1 && *into_v1 != into1)
                throw NotPerfectGame("cross arcs must share one weight split");
            into_v1 = into1;
        }
    }
    auto perfect = max_weight_perfect_matching(g);
    if (!perfect) throw NotPerfectGame("underlying graph must have a perfect matching");

    long n1 = static_cast<long>(game.partition().classes()[0].size());
    long n2 = static_cast<long>(game.partition().classes()[1].size());
    Rational rho = into_v1.value_or(Rational(2, 3));
    RedBlueGraph rb{g, red, 0};
    for (long kk = 0; kk <= red_total; ++kk) {
        if ((n1 - kk) % 2 != 0 || n1 < kk) continue;
        if ((n2 - kk) % 2 != 0 || n2 < kk) continue;
        Rational u1 = rho * Rational(kk) + Rational((n1 - kk) / 2);
        Rational u2 = (Rational(1) - rho) * Rational(kk) + Rational((n2 - kk) / 2);
        if ((target.values[0] - u1).abs() > delta) continue;
        if ((target.values[1] - u2).abs() > delta) continue;
        rb.k = kk;
        if (auto m = brute_force_epm(rb, opt)) return m;
    }
    return std::nullopt;
}

RedBlueGraph gen_epm_instance(int n, double edge_density, double red_density, long k,
                              std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    std::mt19937_64 rng(seed);
    auto coin = [&](double p) { return (rng() >> 11) * 0x1.0p-53 < p; };
    std::vector<std::string> ids;
    for (int v = 0; v < n; ++v) ids.push_back("v" + num(v + 1));
    std::vector<Edge> edges;
    std::vector<char> red;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(edge_density)) {
                edges.push_back({u, v, Rational(1)});
                red.push_back(coin(red_density) ? 1 : 0);
            }
    return RedBlueGraph{UndirectedCompatibilityGraph(VertexTable(std::move(ids)), std::move(edges)),
                        std::move(red), k};
}

}  // namespace pmg
