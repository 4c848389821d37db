#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "pmg/core_solver.hpp"
#include "pmg/games.hpp"
#include "pmg/hardness.hpp"
#include "pmg/simulator.hpp"

namespace pmg {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shared instance format:
//   {"vertices": ["a", ...],
//    "arcs": [{"from": "a", "to": "b", "w": "3/2"}, ...],
//    "partition": [["a", "b"], ["c"]],            (optional; default width 1)
//    "capacities": {"a": 2},                      (optional; b-matching only)
//    "red": [["a","b"], ...], "k": 1,             (optional; red-blue instances)
//    "compact_cycles": [{"a": 5, "L": "5"}, ...]} (optional compact form)
struct ParsedInstance {
    std::optional<DirectedCompatibilityGraph> graph;
    std::optional<Partition> partition;
    std::map<std::string, int> capacities;
    std::optional<CompactCycleInstance> compact;
    std::optional<std::vector<std::pair<std::string, std::string>>> red_edges;
    std::optional<long> k;

    bool is_bmatching() const { return !capacities.empty(); }
    bool is_compact() const { return compact.has_value(); }

    // Builders; validate_instance violations raise ValidationError.
    PartitionedGame to_partitioned(bool uniform) const;
    BMatchingGame to_bmatching() const;
    RedBlueGraph to_red_blue() const;
};

ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance parse_instance_file(const std::string& path);

nlohmann::json partitioned_instance_json(const PartitionedGame& game);
nlohmann::json bmatching_instance_json(const BMatchingGame& game);
nlohmann::json red_blue_instance_json(const RedBlueGraph& rb);
nlohmann::json compact_instance_json(const CompactCycleInstance& inst);

// Allocation files: {"values": {"1": "7/2", ...}} with player keys "1".."n"
// for partitioned games or vertex ids for b-matching games.
Allocation parse_allocation_text(const std::string& text, int players);
Allocation parse_allocation_file(const std::string& path, int players);
Allocation parse_allocation_file(const std::string& path, const VertexTable& players);
nlohmann::json allocation_json(const Allocation& x);

// Certificate files: {"coalitions": [{"players": ["1", "2"], "weight": "1/2"}]}
BalancedCertificate parse_certificate_file(const std::string& path, int players);

SimConfig parse_sim_config_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pmg
