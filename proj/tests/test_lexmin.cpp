#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pmg/lexmin.hpp"

using namespace pmg;
using namespace pmgtest;

namespace {

Allocation alloc(std::vector<Rational> v) { return Allocation(std::move(v)); }

Allocation random_target(std::mt19937_64& rng, int players, long scale) {
    Allocation x(players);
    for (int p = 0; p < players; ++p)
        x.values[p] = Rational(static_cast<long>(rng() % (4 * scale + 1)),
                               1 + static_cast<long>(rng() % 6));
    return x;
}

PartitionedGame random_uniform_game(std::mt19937_64& rng, int n, int max_classes) {
    return PartitionedGame::from_undirected(random_graph(rng, n, 0.25 + 0.6 * (rng() % 100) / 100.0),
                                            random_partition(rng, n, max_classes), true);
}

}  // namespace

TEST_CASE("deviation vectors") {
    auto game = example2_game(false);
    Matching m1({{1, 4}});
    Matching m2({{0, 1}, {3, 4}});
    auto x = alloc({Rational(3), Rational(1)});
    CHECK(deviation_vector(game, m1, x).entries == std::vector<Rational>{Rational(0), Rational(0)});
    CHECK(deviation_vector(game, m2, x).entries == std::vector<Rational>{Rational(1), Rational(1)});
    auto exact = alloc({Rational(2), Rational(2)});
    CHECK(deviation_vector(game, m2, exact).entries ==
          std::vector<Rational>{Rational(0), Rational(0)});
    CHECK(deviation_vector(game, m1, exact).max_entry() == Rational(1));

    DeviationVector a{{Rational(2), Rational(1)}}, b{{Rational(2), Rational(0)}};
    CHECK(lex_compare(a, b) > 0);
    CHECK(lex_compare(b, a) < 0);
    CHECK(lex_compare(a, a) == 0);
}

TEST_CASE("uniform lexmin on the worked example") {
    auto game = example2_game(true);
    auto res = lexmin_uniform(game, alloc({Rational(3), Rational(1)}));
    CHECK(res.matching == Matching({{0, 1}, {3, 4}}));  // the unique maximum matching
    CHECK(res.deviation.entries == std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("uniform lexmin on a path") {
    auto g = graph_of(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
    auto game = PartitionedGame::from_undirected(g, Partition::singletons(3), true);
    auto res = lexmin_uniform(game, alloc({Rational(1), Rational(1), Rational(0)}));
    CHECK(res.matching == Matching({{0, 1}}));
    CHECK(res.deviation.entries ==
          std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("uniform lexmin on an edgeless graph") {
    auto game = PartitionedGame::from_undirected(graph_of(3, {}), Partition::singletons(3), true);
    auto res = lexmin_uniform(game, alloc({Rational(0), Rational(0), Rational(0)}));
    CHECK(res.matching.empty());
    for (const Rational& d : res.deviation.entries) CHECK(d.is_zero());
}

TEST_CASE("feasibility probes") {
    auto game = example2_game(true);
    SUBCASE("full sets accept any optimal matching") {
        std::vector<AdmissibleSet> sets = {
            AdmissibleSet::of(Interval::closed(Rational(0), Rational(3))),
            AdmissibleSet::of(Interval::closed(Rational(0), Rational(2)))};
        auto m = feasibility_probe(game, sets);
        REQUIRE(m.has_value());
        CHECK(*m == Matching({{0, 1}, {3, 4}}));
    }
    SUBCASE("pinning s_1 = 2 still matches") {
        std::vector<AdmissibleSet> sets = {
            AdmissibleSet::of(Interval::point(Rational(2))),
            AdmissibleSet::of(Interval::closed(Rational(0), Rational(2)))};
        CHECK(feasibility_probe(game, sets).has_value());
    }
    SUBCASE("an untouchable class is infeasible") {
        auto g = graph_of(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
        auto path = PartitionedGame::from_undirected(g, Partition({{0, 1}, {2}}, 3), true);
        std::vector<AdmissibleSet> sets = {
            AdmissibleSet::of(Interval::point(Rational(0))),
            AdmissibleSet::of(Interval::closed(Rational(0), Rational(1)))};
        CHECK(!feasibility_probe(path, sets).has_value());
    }
    SUBCASE("two-point sets branch") {
        // square: both maximum matchings; s_1 ends up 1 on a diagonal split
        auto g = graph_of(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)},
                              {2, 3, Rational(1)}, {3, 0, Rational(1)}});
        auto game2 = PartitionedGame::from_undirected(g, Partition({{0, 2}, {1, 3}}, 4), true);
        std::vector<AdmissibleSet> sets = {AdmissibleSet::two_point(0, 2),
                                           AdmissibleSet::of(Interval::closed(Rational(0), Rational(2)))};
        auto m = feasibility_probe(game2, sets);
        REQUIRE(m.has_value());  // both classes fully covered: s_1 = 2 works
        auto s = country_kidney_counts(game2, *m);
        CHECK((s[0] == 0 || s[0] == 2));
    }
    SUBCASE("budget guard") {
        std::vector<AdmissibleSet> sets = {
            AdmissibleSet::of(Interval::closed(Rational(0), Rational(3))),
            AdmissibleSet::of(Interval::closed(Rational(0), Rational(2)))};
        CHECK_THROWS_AS(feasibility_probe(game, sets, 0), BranchBudgetExceeded);
    }
}

TEST_CASE("lexmin optimality against enumeration, wide random sweep") {
    std::mt19937_64 rng(20240);
    int nontrivial = 0;
    for (int iter = 0; iter < 200; ++iter) {
        int n = 3 + static_cast<int>(rng() % 8);  // up to 10 vertices here
        auto game = random_uniform_game(rng, n, 4);
        auto x = random_target(rng, game.player_count(), 2);
        auto res = lexmin_uniform(game, x);
        auto [oracle_m, oracle_dev] = lexmin_bruteforce(game, x);
        REQUIRE(lex_compare(res.deviation, oracle_dev) == 0);
        if (!oracle_dev.entries.empty() && !oracle_dev.entries.front().is_zero()) ++nontrivial;
        // returned matching is optimal and consistent with its levels
        CHECK(res.matching.valid_in(game.graph()));
        CHECK(Rational(static_cast<long>(res.matching.size())) == game.grand_value());
        // every lexicographically minimal matching is minimal
        auto [min_m, min_dev] = minimal_matching_bruteforce(game, x);
        CHECK(res.deviation.max_entry() == min_dev);
    }
    CHECK(nontrivial > 20);
}

TEST_CASE("level structure properties") {
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto game = random_uniform_game(rng, n, 4);
        auto x = random_target(rng, game.player_count(), 2);
        auto res = lexmin_uniform(game, x);
        // strictly decreasing nonnegative levels
        for (std::size_t t = 0; t + 1 < res.levels.levels.size(); ++t)
            CHECK(res.levels.levels[t + 1] < res.levels.levels[t]);
        if (!res.levels.levels.empty())
            CHECK(res.levels.levels.back().sign() >= 0);
        // levels partition the players and the witness attains them exactly
        auto s = country_kidney_counts(game, res.matching);
        std::vector<char> seen(game.player_count(), 0);
        for (std::size_t t = 0; t < res.levels.levels.size(); ++t)
            for (int p : res.levels.classes[t]) {
                CHECK(!seen[p]);
                seen[p] = 1;
                CHECK((x.values[p] - Rational(s[p])).abs() == res.levels.levels[t]);
            }
        for (char c : seen) CHECK(c == 1);
    }
}

TEST_CASE("width-1 directed lexmin examples") {
    SUBCASE("forced single pair") {
        DirectedCompatibilityGraph d(VertexTable({"p", "q"}),
                                     {{0, 1, Rational(1)}, {1, 0, Rational(3)}});
        auto game = PartitionedGame::from_directed(d, Partition::singletons(2));
        auto m = lexmin_width1_directed(game, alloc({Rational(3), Rational(1)}));
        CHECK(m == Matching({{0, 1}}));
        auto u = country_utilities(game, m);
        CHECK(u[0] == Rational(3));
        CHECK(u[1] == Rational(1));
    }
    SUBCASE("single vertex pairs off against the dummy") {
        DirectedCompatibilityGraph d(VertexTable({"p"}), {});
        auto game = PartitionedGame::from_directed(d, Partition::singletons(1));
        CHECK(lexmin_width1_directed(game, alloc({Rational(5)})).empty());
    }
    SUBCASE("two disjoint symmetric pairs against brute force") {
        DirectedCompatibilityGraph d(VertexTable({"a", "b", "c", "e"}),
                                     {{0, 1, Rational(2)}, {1, 0, Rational(2)},
                                      {2, 3, Rational(1)}, {3, 2, Rational(1)}});
        auto game = PartitionedGame::from_directed(d, Partition::singletons(4));
        auto m = lexmin_width1_directed(game, alloc({Rational(2), Rational(2), Rational(1), Rational(1)}));
        CHECK(m == Matching({{0, 1}, {2, 3}}));
    }
}

TEST_CASE("width-1 directed lexmin equals brute force over the closure") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 120; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7);  // up to 8
        std::vector<Arc> arcs;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                if ((rng() % 100) / 100.0 < 0.55)
                    arcs.push_back({u, v, Rational(1 + static_cast<long>(rng() % 4), 1 + rng() % 3)});
            }
        // keep only mutual pairs to respect edge derivation, weights arbitrary
        DirectedCompatibilityGraph d(VertexTable(names(n)), arcs);
        auto game = PartitionedGame::from_directed(d, Partition::singletons(n));
        Allocation x = random_target(rng, n, 2);
        auto got = lexmin_width1_directed(game, x);
        auto got_dev = deviation_vector(game, got, x);
        CHECK(got_dev.entries.size() == static_cast<std::size_t>(n));
        // oracle: enumerate optimal matchings of the derived graph (adding
        // nothing: dropped zero edges leave利 the same u vector) and compare
        auto [oracle_m, oracle_dev] = lexmin_bruteforce(game, x);
        CHECK(lex_compare(got_dev, oracle_dev) == 0);
        CHECK(got.weight_in(game.graph()) == max_weight_matching(game.graph()).total);
    }
}

TEST_CASE("minimal matching brute force") {
    auto game = example2_game(false);
    SUBCASE("reaches zero deviation when the target is attainable") {
        auto [m, dev] = minimal_matching_bruteforce(game, alloc({Rational(3), Rational(1)}));
        CHECK(dev == Rational(0));
        CHECK(m == Matching({{1, 4}}));
    }
    SUBCASE("unique optimum wins regardless of target") {
        auto uniform = example2_game(true);
        auto [m, dev] = minimal_matching_bruteforce(uniform, alloc({Rational(9), Rational(9)}));
        CHECK(m == Matching({{0, 1}, {3, 4}}));
        CHECK(dev == Rational(7));
    }
}
