#pragma once

#include <optional>
#include <vector>

#include "pmg/games.hpp"
#include "pmg/lexmin.hpp"

namespace pmg {

struct NotBipartite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPerfectGame : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform graph with a red/blue edge partition and a red-edge count k.
struct RedBlueGraph {
    UndirectedCompatibilityGraph graph;
    std::vector<char> red;  // parallel to graph.edges()
    long k = 0;

    long red_count(const Matching& m) const;
};

// Two-country instance from numbers a_1..a_k: gadgets v_i' <- v_i -> v_i''
// with both 2-cycles of arc weight a_i; V_1 holds v_i and v_i', V_2 the
// v_i''. Target x = (3/2 sum, 1/2 sum); zero deviation is achievable exactly
// when the numbers split evenly.
struct PartitionInstance {
    PartitionedGame game;
    Allocation target;
    std::vector<long> a;
};
PartitionInstance gen_partition_instance(const std::vector<long>& a);

// Path gadget over 3k sources and 3k sinks, all (3k)^2 source-sink paths of
// length 2 a_q - 1 with arc weights alternating L+1, L, ..., L+1.
struct ThreePartitionInstance {
    PartitionedGame game;
    Allocation target;
    std::vector<long> a;
    long c = 0;
    long big_l = 0;
};
ThreePartitionInstance gen_3partition_instance(const std::vector<long>& a, long c);

// Compactly encoded disjoint even cycles, one per number: cycle i has length
// 4 a_i + 4, split edges e (weight L) and e-bar (weight L+1) at maximum
// distance, and two half-weight edges closing the two connecting paths. Even
// numbers are first lifted to 2 a_i + 1 to make every entry odd.
struct CompactCycleInstance {
    std::vector<long> a;  // all odd after preprocessing
    Rational big_l;
    Allocation target;  // x_1 = x_2

    PartitionedGame expand() const;  // directed game with the U_1/U_2 split
};
CompactCycleInstance gen_compact_cycle_instance(const std::vector<long>& a);

// Capacity-3 gadget: pendant triangles with hub vertices behind every input
// vertex plus a capacity-1 root adjacent to all of them; 13|V|+1 vertices,
// unit weights. The bundled allocation is the half-capacity one from the
// gadget's blocking analysis (3/2 on V and hubs, 1 on triangles, 0 on the
// root).
struct NearlyRegularInstance {
    BMatchingGame game;
    Allocation half_capacity_allocation;
    int root = 0;
};
NearlyRegularInstance gen_nearly3regular_bgame(const UndirectedCompatibilityGraph& g);

// |E| disjoint copies of the bipartite input, copy e with edge e subdivided;
// the output has a nearly 3-regular subgraph iff the input has a 3-regular
// one.
UndirectedCompatibilityGraph bipartite_to_nearly3regular(const UndirectedCompatibilityGraph& g);

// Exhaustive scan of perfect matchings for one with exactly k red edges.
std::optional<Matching> brute_force_epm(const RedBlueGraph& rb, EnumerateOptions opt = {});

// Exact-perfect-matching via the game route: subdivide every edge twice,
// make the red subdivision vertices country 1, search the resulting perfect
// game for a zero-deviation maximum matching, and pull the witness back.
std::optional<Matching> solve_epm_via_game(const RedBlueGraph& rb, EnumerateOptions opt = {});

// Opposite direction: answer a perfect-game deviation query through an
// exact-perfect-matching oracle, scanning k = 0..|R|.
std::optional<Matching> solve_game_via_epm(const PartitionedGame& game, const Allocation& target,
                                           const Rational& delta, EnumerateOptions opt = {});

// Seeded random red-blue instance.
RedBlueGraph gen_epm_instance(int n, double edge_density, double red_density, long k,
                              std::uint64_t seed);

}  // namespace pmg
