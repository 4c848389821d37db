#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pmg/games.hpp"
#include "pmg/reductions.hpp"

namespace pmg {

struct BlockingCoalition {
    PlayerSet players = 0;
    Rational value;      // v(S)
    Rational allocated;  // x(S) < v(S)
};

struct Unbalanced : std::runtime_error {
    int player;
    explicit Unbalanced(int p)
        : std::runtime_error("certificate weights of player " + std::to_string(p + 1) +
                             " do not sum to one"),
          player(p) {}
};

// Coalition weights lambda over nonempty coalitions.
struct BalancedCertificate {
    std::vector<std::pair<PlayerSet, Rational>> weights;
};

using CoalitionOracle = std::function<Rational(PlayerSet)>;

// P1. std::nullopt means x is in the core; otherwise a concrete blocking
// coalition is returned (first one in mask order). Throws NotAnAllocation
// when x(N) != v(N) and BoundExceeded when n exceeds the scan bound.
std::optional<BlockingCoalition> check_core_membership(const CoalitionOracle& value, int n,
                                                       const Allocation& x, int scan_bound = 20);

// Width-1 partitioned games take the edge-inequality fast path; everything
// else falls back to the exhaustive scan.
std::optional<BlockingCoalition> check_core_membership(const PartitionedGame& game,
                                                       const Allocation& x, int scan_bound = 20);
std::optional<BlockingCoalition> check_core_membership(const BMatchingGame& game,
                                                       const Allocation& x, int scan_bound = 20);

// P2 + P3. Solves the exact rational feasibility system over all 2^n - 2
// proper coalition constraints (by cutting-plane generation) and returns the
// lexicographically smallest core point under player order, or std::nullopt
// when the core is empty.
std::optional<Allocation> find_core_allocation(const CoalitionOracle& value, int n,
                                               int player_bound = 16);
std::optional<Allocation> find_core_allocation(const PartitionedGame& game, int player_bound = 16);
std::optional<Allocation> find_core_allocation(const BMatchingGame& game, int player_bound = 16);

enum class CertificateCheck { CertifiesEmpty, DoesNotCertify };

// Bondareva-Shapley direction: balancedness per player (sum of weights of
// coalitions containing the player equals one) plus the strict inequality
// sum lambda(S) v(S) > v(N).
CertificateCheck verify_balanced_certificate(const CoalitionOracle& value, int n,
                                             const BalancedCertificate& cert);
CertificateCheck verify_balanced_certificate(const PartitionedGame& game,
                                             const BalancedCertificate& cert);

}  // namespace pmg
