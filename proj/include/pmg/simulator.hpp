#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmg/games.hpp"
#include "pmg/lexmin.hpp"

namespace pmg {

// Multi-round credit-based exchange simulation. Uniform mode accounts on the
// s-scale (actual kidney counts, which sum to 2 v(N) per round), so initial
// allocations are doubled accordingly and credits conserve exactly.
struct SimConfig {
    enum class Concept { kShapley, kEqualSplit };
    enum class Rule { kLexmin, kMinimalBruteforce };
    enum class Mode { kUniform, kDirected };

    int countries = 2;
    std::vector<int> initial_pool;  // per country; broadcast when a single entry
    double arrival_rate = 0.0;      // expected new pairs per country per round
    double compat_prob = 0.5;       // probability of each directed arc
    int rounds = 1;
    std::uint64_t seed = 1;
    Concept solution_concept = Concept::kEqualSplit;
    Rule rule = Rule::kLexmin;
    Mode mode = Mode::kUniform;
    Rational epsilon = Rational(1, 10);  // directed sparse weights {1, 1 - epsilon}
    int shapley_bound = 12;
    EnumerateOptions brute;  // bounds for the brute-force matching rules
};

struct CountryRound {
    Rational y;      // initial allocation (mode scale)
    Rational c_in;   // credits carried in
    Rational x;      // target, x = y + c_in
    Rational u;      // realized utility (s-scale in uniform mode)
    Rational c_out;  // x - u
};

struct RoundTrace {
    int round = 0;           // 1-based
    Rational value;          // v(N) of the round game
    int pool_size = 0;
    std::vector<CountryRound> countries;
    std::vector<std::pair<std::string, std::string>> matching;  // vertex id pairs
};

// One round over an explicit game: target x = y + credits, matching per the
// configured rule, trace row per country. y must sum to the game's mode-scale
// total (2 v(N) uniform, v(N) directed).
struct StepOutcome {
    RoundTrace trace;
    Matching matching;
    std::vector<Rational> next_credits;
};
StepOutcome step_round(const SimConfig& config, const PartitionedGame& game, const Allocation& y,
                       const std::vector<Rational>& credits, int round_index);

std::vector<RoundTrace> run_simulation(const SimConfig& config);

// Canonical serializations (bit-stable for a fixed trace).
std::string traces_to_csv(const std::vector<RoundTrace>& traces, std::uint64_t seed);
std::string traces_to_json(const std::vector<RoundTrace>& traces, std::uint64_t seed);

}  // namespace pmg
