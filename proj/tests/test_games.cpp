#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pmg/games.hpp"

using namespace pmg;
using namespace pmgtest;

namespace {

PartitionedGame fig5_game() {
    return PartitionedGame::from_undirected(fig1_graph(), Partition({{0, 1, 2}, {3, 4}, {5}}, 6));
}

BMatchingGame fig3_game() {
    std::vector<int> caps = {1, 2, 1, 1, 3, 1};
    return BMatchingGame(fig1_graph(), caps);
}

// independent Shapley oracle: average marginal contribution over all n!
// player orders
Allocation shapley_by_permutations(const std::function<Rational(PlayerSet)>& v, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Allocation phi(n);
    long count = 0;
    do {
        PlayerSet s = 0;
        for (int i = 0; i < n; ++i) {
            phi.values[perm[i]] += v(s | (PlayerSet(1) << perm[i])) - v(s);
            s |= PlayerSet(1) << perm[i];
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int p = 0; p < n; ++p) phi.values[p] /= Rational(count);
    return phi;
}

}  // namespace

TEST_CASE("coalition values of partitioned games") {
    auto g = fig5_game();
    CHECK(g.coalition_value(full_coalition(3)) == Rational(7));
    CHECK(g.coalition_value(0) == Rational(0));
    CHECK(g.width() == 3);

    auto width1 = PartitionedGame::from_undirected(fig1_graph(), Partition::singletons(6));
    CHECK(width1.coalition_value((PlayerSet(1) << 3) | (PlayerSet(1) << 4)) == Rational(3));
    CHECK_THROWS_AS(width1.coalition_value(PlayerSet(1) << 6), std::invalid_argument);
}

TEST_CASE("coalition values of b-matching games") {
    auto g = fig3_game();
    CHECK(g.grand_value() == Rational(10));
    CHECK(g.coalition_value(0) == Rational(0));
    CHECK(g.coalition_value((PlayerSet(1) << 3) | (PlayerSet(1) << 4)) == Rational(3));
    CHECK(g.max_capacity() == 3);
}

TEST_CASE("b-matching values agree with direct enumeration") {
    // oracle: scan all edge subsets respecting capacities (tiny instances)
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 2 + static_cast<int>(rng() % 5);  // up to 6
        auto g = random_graph(rng, n, 0.6, 3);
        std::vector<int> caps(n);
        for (int v = 0; v < n; ++v) caps[v] = 1 + static_cast<int>(rng() % 3);
        BMatchingGame game(g, caps);
        std::size_t m = g.edges().size();
        if (m > 16) continue;
        Rational best;
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> deg(n, 0);
            Rational w;
            bool ok = true;
            for (std::size_t e = 0; e < m && ok; ++e)
                if (mask >> e & 1) {
                    ++deg[g.edges()[e].u];
                    ++deg[g.edges()[e].v];
                    if (deg[g.edges()[e].u] > caps[g.edges()[e].u] ||
                        deg[g.edges()[e].v] > caps[g.edges()[e].v])
                        ok = false;
                    w += g.edges()[e].weight;
                }
            if (ok && best < w) best = w;
        }
        CHECK(game.grand_value() == best);
    }
}

TEST_CASE("kidney counts and utilities on the worked example") {
    auto game = example2_game(false);
    Matching m1({{1, 4}});          // i2 j2
    Matching m2({{0, 1}, {3, 4}});  // i1 i2, j1 j2

    auto s2 = country_kidney_counts(game, m2);
    CHECK(s2 == std::vector<long>{2, 2});
    CHECK(country_kidney_counts(game, Matching{}) == std::vector<long>{0, 0});

    auto u1 = country_utilities(game, m1);
    CHECK(u1[0] == Rational(3));
    CHECK(u1[1] == Rational(1));
    auto u2 = country_utilities(game, m2);
    CHECK(u2[0] == Rational(2));
    CHECK(u2[1] == Rational(2));
    CHECK(country_utilities(game, Matching{}) == std::vector<Rational>{Rational(0), Rational(0)});

    CHECK_THROWS_AS(country_kidney_counts(game, Matching({{0, 3}})), std::invalid_argument);
}

TEST_CASE("s-count for a path with a two-vertex class") {
    auto g = graph_of(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
    auto game = PartitionedGame::from_undirected(g, Partition({{0, 1}, {2}}, 3));
    CHECK(country_kidney_counts(game, Matching({{0, 1}})) == std::vector<long>{2, 0});
}

TEST_CASE("sum identities on random instances") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto ug = random_graph(rng, n, 0.5, 3);
        auto game = PartitionedGame::from_directed(ug.to_symmetric_directed(),
                                                   random_partition(rng, n, 4));
        auto solved = max_weight_matching(game.graph());
        auto s = country_kidney_counts(game, solved.matching);
        long total_s = 0;
        for (long v : s) total_s += v;
        CHECK(total_s == 2 * static_cast<long>(solved.matching.size()));
        auto u = country_utilities(game, solved.matching);
        Rational total_u;
        for (const Rational& v : u) total_u += v;
        CHECK(total_u == solved.total);
    }
}

TEST_CASE("superadditivity and monotonicity") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 2 + static_cast<int>(rng() % 6);
        auto game = PartitionedGame::from_undirected(random_graph(rng, n, 0.5, 4),
                                                     random_partition(rng, n, 4));
        int players = game.player_count();
        PlayerSet all = full_coalition(players);
        for (PlayerSet s = 0; s <= all; ++s) {
            for (PlayerSet t = 0; t <= all; ++t) {
                if (s > t) continue;
                if ((s & t) == 0 && s != 0 && t != 0)
                    CHECK(game.coalition_value(s | t) >=
                          game.coalition_value(s) + game.coalition_value(t));
                if ((s & t) == s) CHECK(game.coalition_value(s) <= game.coalition_value(t));
                if (t == all) break;
            }
            if (s == all) break;
        }
    }
}

TEST_CASE("shapley values") {
    SUBCASE("two symmetric players split evenly") {
        auto phi = shapley_value(
            [](PlayerSet s) { return s == 3 ? Rational(4) : Rational(0); }, 2);
        CHECK(phi.values[0] == Rational(2));
        CHECK(phi.values[1] == Rational(2));
    }
    SUBCASE("uniform triangle splits v(N)=1 three ways") {
        auto phi = shapley_value(triangle_game());
        CHECK(phi.values == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    }
    SUBCASE("three-player game matches the permutation oracle and is efficient") {
        auto game = fig5_game();
        auto oracle = [&](PlayerSet s) { return game.coalition_value(s); };
        auto phi = shapley_value(game);
        CHECK(phi.total() == Rational(7));
        auto expected = shapley_by_permutations(oracle, 3);
        CHECK(phi.values == expected.values);
    }
    SUBCASE("bound guard") {
        CHECK_THROWS_AS(shapley_value([](PlayerSet) { return Rational(0); }, 13), BoundExceeded);
    }
    SUBCASE("efficiency on random games") {
        std::mt19937_64 rng(41);
        for (int iter = 0; iter < 30; ++iter) {
            int n = 2 + static_cast<int>(rng() % 6);
            auto game = PartitionedGame::from_undirected(random_graph(rng, n, 0.5, 3),
                                                         random_partition(rng, n, 4));
            CHECK(shapley_value(game).total() == game.grand_value());
        }
    }
}

TEST_CASE("uniform games count matching size") {
    auto game = example2_game(true);
    CHECK(game.grand_value() == Rational(2));
    CHECK(game.uniform());
}
