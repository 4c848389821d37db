#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmg/games.hpp"

namespace pmg {

struct NotAnAllocation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WidthOne : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Capacity expansion of a b-matching game into a partitioned matching game of
// width b*. Vertex i becomes a class V_i of b(i) copies; edge ij becomes a
// two-vertex class E_ij = {i_j, j_i} with i_j joined to every copy of i, j_i
// to every copy of j, and i_j j_i closing the gadget; every gadget edge
// carries w(ij). Uniformity is preserved.
struct TutteExpansion {
    BMatchingGame source;
    PartitionedGame result;
    // result players: first the |V| vertex classes in vertex order, then the
    // |E| edge classes in edge order
    int vertex_players = 0;
    int edge_players = 0;
    std::vector<std::vector<int>> copies;          // source vertex -> expansion vertex indices
    std::vector<std::pair<int, int>> edge_nodes;   // source edge -> (i_j, j_i)
};

TutteExpansion tutte_expansion(const BMatchingGame& game);

// Transform of a b-matching of the source into a matching of the expansion:
// matched source edges route their gadget ends to distinct free copies
// (lowest index first), unmatched ones close internally. Size |E| + |m|,
// weight w(E) + w(m).
Matching transform_b_matching(const TutteExpansion& exp, const Matching& m);

// x on the source lifts to the expansion by x(V_i) = x_i, x(E_ij) = w(ij).
Allocation lift_allocation_b2p(const TutteExpansion& exp, const Allocation& x);

// Per-class root vertex r_i with capacity |V_i|, joined to all of V_i by
// edges of weight 2 v(N); original vertices get capacity 2. Requires width
// at least 2. A v(N) = 0 source yields zero-weight root edges, which is
// permitted but flagged.
struct RootGadget {
    PartitionedGame source;
    BMatchingGame result;
    std::vector<int> root_vertex;  // class index -> result vertex index of r_i
    Rational source_grand_value;
    bool zero_weight_root_edges = false;
};

RootGadget root_gadget(const PartitionedGame& game);

// x on the source lifts by x_i/|V_i| + v(N) on V_i and v(N) |V_i| on r_i.
Allocation lift_allocation_p2b(const RootGadget& gadget, const Allocation& x);

}  // namespace pmg
