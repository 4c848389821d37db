#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "pmg/graph.hpp"
#include "pmg/matching.hpp"

namespace pmg {

// Coalitions are bitmasks over player indices; all coalition-level operations
// are desk-scale by contract and guard their bounds.
using PlayerSet = std::uint64_t;

inline PlayerSet full_coalition(int n) {
    return n >= 64 ? ~PlayerSet(0) : ((PlayerSet(1) << n) - 1);
}

// Allocation (or target) vector over players, exact rationals.
struct Allocation {
    std::vector<Rational> values;

    Allocation() = default;
    explicit Allocation(std::vector<Rational> v) : values(std::move(v)) {}
    explicit Allocation(int n) : values(n) {}

    int size() const { return static_cast<int>(values.size()); }
    Rational total() const {
        Rational s;
        for (const auto& v : values) s += v;
        return s;
    }
    Rational over(PlayerSet s) const {  // x(S)
        Rational sum;
        for (int p = 0; p < size(); ++p)
            if (s >> p & 1) sum += values[p];
        return sum;
    }
};

// Players own the classes V_1..V_n of a vertex partition; the value of a
// coalition is the maximum weight matching on the union of its classes. In
// uniform mode all matching weights are 1 regardless of the source weights,
// and utilities are reported on the s-scale (kidney counts).
class PartitionedGame {
public:
    PartitionedGame() = default;
    static PartitionedGame from_undirected(UndirectedCompatibilityGraph g, Partition p,
                                           bool uniform = false);
    static PartitionedGame from_directed(DirectedCompatibilityGraph g, Partition p,
                                         bool uniform = false);

    int player_count() const { return partition_.class_count(); }
    bool directed() const { return directed_.has_value(); }
    bool uniform() const { return uniform_; }
    int width() const { return partition_.width(); }
    const UndirectedCompatibilityGraph& graph() const { return graph_; }
    const Partition& partition() const { return partition_; }
    const DirectedCompatibilityGraph& directed_graph() const;

    Rational coalition_value(PlayerSet s) const;  // memoized
    Rational grand_value() const { return coalition_value(full_coalition(player_count())); }

private:
    struct Memo {
        std::mutex mutex;
        std::map<PlayerSet, Rational> values;
    };

    std::optional<DirectedCompatibilityGraph> directed_;
    UndirectedCompatibilityGraph graph_;  // matching substrate; weights 1 when uniform
    Partition partition_;
    bool uniform_ = false;
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();

    void check_players(PlayerSet s) const;
};

// Players are the vertices; coalition values are optimal b-matchings,
// computed through the capacity-expansion reduction (see reductions.hpp).
class BMatchingGame {
public:
    BMatchingGame() = default;
    BMatchingGame(UndirectedCompatibilityGraph g, std::vector<int> capacities, bool uniform = false);

    int player_count() const { return graph_.vertex_count(); }
    bool uniform() const { return uniform_; }
    const UndirectedCompatibilityGraph& graph() const { return graph_; }
    const std::vector<int>& capacities() const { return capacities_; }
    int capacity(int v) const { return capacities_.at(v); }
    int max_capacity() const;  // b*

    Rational coalition_value(PlayerSet s) const;  // memoized, via Tutte expansion
    Rational grand_value() const { return coalition_value(full_coalition(player_count())); }

    // Induced sub-instance on the players in s (vertex order preserved).
    BMatchingGame induced(PlayerSet s) const;

    bool is_valid_b_matching(const Matching& m) const;

private:
    struct Memo {
        std::mutex mutex;
        std::map<PlayerSet, Rational> values;
    };

    UndirectedCompatibilityGraph graph_;
    std::vector<int> capacities_;
    bool uniform_ = false;
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// s_p(M): number of vertices of V_p covered by M.
std::vector<long> country_kidney_counts(const PartitionedGame& game, const Matching& m);

// u_p(M): sum of incoming arc weights over matched pairs whose receiver lies
// in V_p. Directed games only.
std::vector<Rational> country_utilities(const PartitionedGame& game, const Matching& m);

// Utilities on the scale the game mode prescribes: s-scale for uniform games,
// u-scale for directed ones.
std::vector<Rational> mode_utilities(const PartitionedGame& game, const Matching& m);

// Shapley value by direct subset enumeration of the coalition oracle.
Allocation shapley_value(const std::function<Rational(PlayerSet)>& value, int n,
                         int player_bound = 12);
Allocation shapley_value(const PartitionedGame& game, int player_bound = 12);
Allocation shapley_value(const BMatchingGame& game, int player_bound = 12);

}  // namespace pmg
