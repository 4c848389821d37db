#pragma once

#include <optional>
#include <vector>

#include "pmg/enumerate.hpp"
#include "pmg/games.hpp"

namespace pmg {

// |x_p - u_p(M)| (s-scale in uniform mode) sorted non-increasingly.
struct DeviationVector {
    std::vector<Rational> entries;

    Rational max_entry() const { return entries.empty() ? Rational(0) : entries.front(); }
};

// Returns -1 / 0 / +1 for lexicographic comparison of sorted vectors.
int lex_compare(const DeviationVector& a, const DeviationVector& b);

// Levels d_1 > d_2 > ... > d_t with the player classes finished at each.
struct LevelStructure {
    std::vector<Rational> levels;
    std::vector<std::vector<int>> classes;
};

struct LexminResult {
    Matching matching;
    LevelStructure levels;
    DeviationVector deviation;
};

struct BranchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-player admissible set for a feasibility probe: either an interval of
// admissible s_p values or the two-point set {x_p - d, x_p + d} when both
// sides are attainable integers.
struct AdmissibleSet {
    enum Kind { kInterval, kTwoPoint } kind = kInterval;
    Interval interval;           // kInterval
    long lo_point = 0, hi_point = 0;  // kTwoPoint

    static AdmissibleSet of(Interval iv) { return {kInterval, std::move(iv), 0, 0}; }
    static AdmissibleSet two_point(long lo, long hi) {
        return {kTwoPoint, Interval::closed(Rational(0), Rational(0)), lo, hi};
    }
};

// Decides whether some maximum matching satisfies every admissible set,
// branching over side assignments for the two-point sets (interval-hull
// pruning, hard budget on matching solves).
std::optional<Matching> feasibility_probe(const PartitionedGame& game,
                                          const std::vector<AdmissibleSet>& sets,
                                          long solve_budget = 1 << 12);

// Lexicographically minimal maximum matching for a uniform game: binary
// searches the level values d_1 > d_2 > ... over the attainable deviation
// candidates and finishes an inclusion-minimal player set at each level.
LexminResult lexmin_uniform(const PartitionedGame& game, const Allocation& target,
                            long solve_budget = 1 << 12);

// Width-1 directed case: one maximum weight perfect matching computation on
// the zero-extended complete graph under two-component weights whose
// secondary encodes deviation-rank penalties.
Matching lexmin_width1_directed(const PartitionedGame& game, const Allocation& target);

// Brute-force oracles over the enumerated optimal-matching family.
std::pair<Matching, Rational> minimal_matching_bruteforce(const PartitionedGame& game,
                                                          const Allocation& target,
                                                          EnumerateOptions opt = {});
std::pair<Matching, DeviationVector> lexmin_bruteforce(const PartitionedGame& game,
                                                       const Allocation& target,
                                                       EnumerateOptions opt = {});

DeviationVector deviation_vector(const PartitionedGame& game, const Matching& m,
                                 const Allocation& target);

}  // namespace pmg
