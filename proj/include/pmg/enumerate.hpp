#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pmg/matching.hpp"

namespace pmg {

// Brute-force matching machinery, independent of the blossom solver. Used as
// the oracle side of dual-route checks and as the production enumeration of
// the optimal-matching family.

struct EnumerateOptions {
    int vertex_bound = 16;           // BoundExceeded above this
    bool perfect_only = false;       // restrict to perfect matchings
    std::size_t node_budget = 200'000'000;  // hard stop for runaway recursions
};

namespace detail {

// Thrown by enumeration callbacks to end a scan early.
struct StopEnumeration {};

template <typename W>
W mul_nat(const W& w, long k) {
    W acc = weight_zero<W>();
    for (long i = 0; i < k; ++i) acc += w;
    return acc;
}

// DFS over "first uncovered vertex: leave unmatched or match upward",
// visiting every matching exactly once. `on_leaf` sees each complete
// matching; prune_bound, when given, cuts branches that cannot reach it.
template <typename W>
class MatchingDfs {
public:
    MatchingDfs(int n, const std::vector<WeightedEdgeIn<W>>& edges, const EnumerateOptions& opt)
        : n_(n), opt_(opt), adj_(n, std::vector<int>(n, -1)) {
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            adj_[edges[i].u][edges[i].v] = i;
            adj_[edges[i].v][edges[i].u] = i;
        }
        edges_ = edges;
        wmax_ = weight_zero<W>();
        for (const auto& e : edges_)
            if (wmax_ < e.w) wmax_ = e.w;
    }

    void run(const std::optional<W>& target,
             const std::function<void(const std::vector<int>&, const W&)>& on_leaf) {
        covered_.assign(n_, 0);
        picked_.clear();
        target_ = target;
        on_leaf_ = &on_leaf;
        maximize_ = false;
        nodes_ = 0;
        dfs(0, weight_zero<W>());
    }

    // Maximum achievable weight; prunes branches that cannot beat the best
    // prefix seen so far (every prefix is itself a matching).
    W run_max() {
        covered_.assign(n_, 0);
        picked_.clear();
        target_ = std::nullopt;
        on_leaf_ = nullptr;
        maximize_ = true;
        best_ = weight_zero<W>();
        nodes_ = 0;
        dfs(0, weight_zero<W>());
        return best_;
    }

private:
    void dfs(int pos, W acc) {
        if (++nodes_ > opt_.node_budget) throw BoundExceeded("matching enumeration budget exhausted");
        if (maximize_ && best_ < acc) best_ = acc;
        while (pos < n_ && covered_[pos]) ++pos;
        if (pos == n_) {
            if (!maximize_ && (!target_ || acc == *target_)) (*on_leaf_)(picked_, acc);
            return;
        }
        if (target_ || maximize_) {
            // at most floor(free/2) further edges, each at most wmax
            int free_count = 0;
            for (int v = pos; v < n_; ++v)
                if (!covered_[v]) ++free_count;
            W bound = acc + mul_nat(wmax_, free_count / 2);
            if (target_ && bound < *target_) return;
            if (maximize_ && !(best_ < bound)) return;
        }
        if (!opt_.perfect_only) dfs(pos + 1, acc);
        covered_[pos] = 1;
        for (int v = pos + 1; v < n_; ++v) {
            if (covered_[v] || adj_[pos][v] < 0) continue;
            int ei = adj_[pos][v];
            covered_[v] = 1;
            picked_.push_back(ei);
            dfs(pos + 1, acc + edges_[ei].w);
            picked_.pop_back();
            covered_[v] = 0;
        }
        covered_[pos] = 0;
    }

    int n_;
    EnumerateOptions opt_;
    std::vector<std::vector<int>> adj_;
    std::vector<WeightedEdgeIn<W>> edges_;
    W wmax_;
    std::vector<char> covered_;
    std::vector<int> picked_;
    std::optional<W> target_;
    const std::function<void(const std::vector<int>&, const W&)>* on_leaf_ = nullptr;
    bool maximize_ = false;
    W best_{};
    std::size_t nodes_ = 0;
};

}  // namespace detail

// Maximum matching weight by exhaustive scan (no solver involvement).
template <typename W>
W brute_force_max_matching_weight(int n, const std::vector<WeightedEdgeIn<W>>& edges,
                                  EnumerateOptions opt = {}) {
    if (n > opt.vertex_bound) throw BoundExceeded("brute force limited to |V| <= bound");
    detail::MatchingDfs<W> dfs(n, edges, opt);
    return dfs.run_max();
}

// Independent check of the same value via subset dynamic programming.
template <typename W>
W max_matching_weight_subset_dp(int n, const std::vector<WeightedEdgeIn<W>>& edges) {
    if (n > 20) throw BoundExceeded("subset dp limited to |V| <= 20");
    std::vector<W> dp(std::size_t(1) << n, weight_zero<W>());
    for (std::uint32_t mask = 1; mask < dp.size(); ++mask) {
        int v = 0;
        while (!(mask >> v & 1)) ++v;
        dp[mask] = dp[mask & ~(1u << v)];
        for (const auto& e : edges) {
            int a = e.u, b = e.v;
            if (a != v && b != v) continue;
            int other = a == v ? b : a;
            if (!(mask >> other & 1)) continue;
            W cand = e.w + dp[mask & ~(1u << v) & ~(1u << other)];
            if (dp[mask] < cand) dp[mask] = cand;
        }
    }
    return dp.back();
}

// Streams every maximum weight matching exactly once. The default bound
// matches the engine contract; callers that know their instance is tame may
// raise it.
template <typename W>
void enumerate_optimal_matchings(int n, const std::vector<WeightedEdgeIn<W>>& edges,
                                 const std::function<void(const Matching&, const W&)>& yield,
                                 EnumerateOptions opt = {}) {
    if (n > opt.vertex_bound) throw BoundExceeded("enumeration limited to |V| <= bound");
    detail::MatchingDfs<W> scan(n, edges, opt);
    W best = scan.run_max();
    detail::MatchingDfs<W> emit(n, edges, opt);
    emit.run(best, [&](const std::vector<int>& picked, const W& w) {
        Matching m;
        for (int ei : picked) m.edges.emplace_back(edges[ei].u, edges[ei].v);
        m.normalize();
        yield(m, w);
    });
}

void enumerate_optimal_matchings(const UndirectedCompatibilityGraph& g,
                                 const std::function<void(const Matching&, const Rational&)>& yield,
                                 EnumerateOptions opt = {});

// Streams every perfect matching (any weight), for red-blue oracles.
template <typename W>
void enumerate_perfect_matchings(int n, const std::vector<WeightedEdgeIn<W>>& edges,
                                 const std::function<void(const Matching&)>& yield,
                                 EnumerateOptions opt = {}) {
    if (n > opt.vertex_bound) throw BoundExceeded("enumeration limited to |V| <= bound");
    opt.perfect_only = true;
    detail::MatchingDfs<W> emit(n, edges, opt);
    emit.run(std::nullopt, [&](const std::vector<int>& picked, const W&) {
        Matching m;
        for (int ei : picked) m.edges.emplace_back(edges[ei].u, edges[ei].v);
        m.normalize();
        yield(m);
    });
}

}  // namespace pmg
