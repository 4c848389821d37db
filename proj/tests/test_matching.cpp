#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "pmg/enumerate.hpp"
#include "pmg/matching.hpp"

using namespace pmg;
using namespace pmgtest;

TEST_CASE("worked example values") {
    auto fig1 = max_weight_matching(fig1_graph());
    CHECK(fig1.total == Rational(7));
    CHECK(fig1.matching.valid_in(fig1_graph()));

    auto empty = max_weight_matching(graph_of(3, {}));
    CHECK(empty.total == Rational(0));
    CHECK(empty.matching.empty());

    auto tri = max_weight_matching(
        graph_of(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)}}));
    CHECK(tri.total == Rational(1));
    CHECK(tri.matching.size() == 1);
}

TEST_CASE("perfect matching examples") {
    auto single = max_weight_perfect_matching(graph_of(2, {{0, 1, Rational(5)}}));
    REQUIRE(single.has_value());
    CHECK(single->total == Rational(5));

    // 4-cycle with weights 1,2,1,2: both perfect matchings enumerated give 4
    auto square = graph_of(4, {{0, 1, Rational(1)},
                               {1, 2, Rational(2)},
                               {2, 3, Rational(1)},
                               {3, 0, Rational(2)}});
    auto best = max_weight_perfect_matching(square);
    REQUIRE(best.has_value());
    CHECK(best->total == Rational(4));

    CHECK(!max_weight_perfect_matching(graph_of(3, {{0, 1, Rational(1)}})).has_value());
    CHECK(!max_weight_perfect_matching(graph_of(2, {})).has_value());
    auto zero = max_weight_perfect_matching(graph_of(0, {}));
    REQUIRE(zero.has_value());
    CHECK(zero->matching.empty());
}

TEST_CASE("enumerating the optimal family") {
    auto ex2 = underlying_undirected(example2_directed());
    SUBCASE("weighted: both optima appear exactly once") {
        std::set<Matching> family;
        enumerate_optimal_matchings(ex2, [&](const Matching& m, const Rational& w) {
            CHECK(w == Rational(4));
            CHECK(family.insert(m).second);
        });
        REQUIRE(family.size() == 2);
        CHECK(family.count(Matching({{1, 4}})) == 1);           // i2 j2
        CHECK(family.count(Matching({{0, 1}, {3, 4}})) == 1);   // i1 i2, j1 j2
    }
    SUBCASE("uniform: the two-edge matching is the unique optimum") {
        std::vector<Edge> uni = ex2.edges();
        for (Edge& e : uni) e.weight = Rational(1);
        UndirectedCompatibilityGraph g(ex2.vertices(), uni);
        std::vector<Matching> family;
        enumerate_optimal_matchings(g, [&](const Matching& m, const Rational&) {
            family.push_back(m);
        });
        REQUIRE(family.size() == 1);
        CHECK(family[0] == Matching({{0, 1}, {3, 4}}));
    }
    SUBCASE("edgeless graph yields exactly the empty matching") {
        int count = 0;
        enumerate_optimal_matchings(graph_of(4, {}), [&](const Matching& m, const Rational&) {
            CHECK(m.empty());
            ++count;
        });
        CHECK(count == 1);
    }
    SUBCASE("bound guard") {
        EnumerateOptions opt;
        opt.vertex_bound = 4;
        CHECK_THROWS_AS(
            enumerate_optimal_matchings(graph_of(5, {}), [](const Matching&, const Rational&) {}, opt),
            BoundExceeded);
    }
}

TEST_CASE("solver against independent oracles, 500 random graphs") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 2 + static_cast<int>(rng() % 9);  // up to 10
        auto g = random_graph(rng, n, 0.2 + 0.7 * (rng() % 100) / 100.0, 1 + rng() % 6);
        std::vector<WeightedEdgeIn<Rational>> edges;
        for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
        Rational solver = max_weight_matching(g).total;
        CHECK(solver == brute_force_max_matching_weight<Rational>(n, edges));
        CHECK(solver == max_matching_weight_subset_dp<Rational>(n, edges));
    }
}

TEST_CASE("lexicographic weights agree with brute force") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7);  // up to 8
        std::vector<WeightedEdgeIn<LexPair>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 3 != 0)
                    edges.push_back({u, v,
                                     LexPair{Rational(static_cast<long>(rng() % 4)),
                                             Rational(static_cast<long>(rng() % 15) - 7)}});
        auto got = max_weight_matching<LexPair>(n, edges);
        CHECK(got.total == brute_force_max_matching_weight<LexPair>(n, edges));
    }
}

TEST_CASE("interval-constrained matchings") {
    // path a-b-c with unit weights
    auto path = graph_of(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
    Partition part({{0, 1}, {2}}, 3);
    SUBCASE("forcing both covered vertices into the first class") {
        IntervalConstraints cons;
        cons.per_class = {Interval::closed(Rational(1), Rational(2)),
                          Interval::closed(Rational(0), Rational(0))};
        auto m = interval_constrained_optimal_matching(path, part, cons);
        REQUIRE(m.has_value());
        CHECK(*m == Matching({{0, 1}}));
    }
    SUBCASE("an untouched first class is infeasible") {
        IntervalConstraints cons;
        cons.per_class = {Interval::closed(Rational(0), Rational(0)),
                          Interval::closed(Rational(0), Rational(1))};
        CHECK(!interval_constrained_optimal_matching(path, part, cons).has_value());
    }
    SUBCASE("unconstrained intervals accept any optimum") {
        IntervalConstraints cons;
        cons.per_class = {Interval::closed(Rational(0), Rational(2)),
                          Interval::closed(Rational(0), Rational(1))};
        auto m = interval_constrained_optimal_matching(path, part, cons);
        REQUIRE(m.has_value());
        CHECK(m->size() == 1);
    }
    SUBCASE("open intervals shrink to enclosed integers") {
        IntervalConstraints cons;
        cons.per_class = {Interval::open(Rational(1, 2), Rational(5, 2)),
                          Interval::closed(Rational(0), Rational(0))};
        auto m = interval_constrained_optimal_matching(path, part, cons);
        REQUIRE(m.has_value());
        CHECK(*m == Matching({{0, 1}}));
    }
    SUBCASE("open interval around no integer is infeasible") {
        IntervalConstraints cons;
        cons.per_class = {Interval::open(Rational(1, 3), Rational(2, 3)),
                          Interval::closed(Rational(0), Rational(1))};
        CHECK(!interval_constrained_optimal_matching(path, part, cons).has_value());
    }
}

TEST_CASE("interval feasibility matches exhaustive scans") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto g = random_graph(rng, n, 0.25 + 0.6 * (rng() % 100) / 100.0, 2);
        Partition part = random_partition(rng, n, 3);
        IntervalConstraints cons;
        for (const auto& cls : part.classes()) {
            long a = static_cast<long>(rng() % (cls.size() + 1));
            long b = a + static_cast<long>(rng() % (cls.size() - a + 1));
            cons.per_class.push_back(Interval::closed(Rational(a), Rational(b)));
        }
        auto witness = interval_constrained_optimal_matching(g, part, cons);
        bool oracle = false;
        enumerate_optimal_matchings(g, [&](const Matching& m, const Rational&) {
            for (int p = 0; p < part.class_count(); ++p) {
                long s = 0;
                for (int v : part.classes()[p])
                    if (m.covers(v)) ++s;
                if (Rational(s) < cons.per_class[p].lo || cons.per_class[p].hi < Rational(s)) return;
            }
            oracle = true;
        });
        REQUIRE(witness.has_value() == oracle);
        if (witness) {
            CHECK(witness->valid_in(g));
            CHECK(witness->weight_in(g) == max_weight_matching(g).total);
        }
    }
}

TEST_CASE("extension graph bound") {
    // |V(extension)| <= 2|V| + 1 is asserted inside the solver call; a probe
    // with every class fully constrained exercises the largest extension
    auto g = fig1_graph();
    Partition part({{0, 1, 2, 3, 4, 5}}, 6);
    IntervalConstraints cons;
    cons.per_class = {Interval::closed(Rational(0), Rational(6))};
    CHECK(interval_constrained_optimal_matching(g, part, cons).has_value());
}
