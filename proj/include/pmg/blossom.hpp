#pragma once

#include <algorithm>
#include <cassert>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pmg/weights.hpp"

namespace pmg {

template <typename W>
struct WeightedEdgeIn;
template <typename W>
struct SolveResult;

namespace detail {

// Primal-dual (Edmonds) solver for maximum weight perfect matching on a
// general graph, generic over an ordered abelian group W. Edge weights are
// doubled on entry; dual updates then only halve even group elements, which
// keeps integer instantiations exact.
//
// Ids: 1..n are real vertices, n+1..2n are blossom slots, 0 is null.
template <typename W>
class BlossomPM {
public:
    BlossomPM(int n, const std::vector<WeightedEdgeIn<W>>& edges) : n_(n), cap_(2 * n) {
        has_.assign(n_ + 1, std::vector<char>(n_ + 1, 0));
        w2_.assign(n_ + 1, std::vector<W>(n_ + 1, weight_zero<W>()));
        worig_.assign(n_ + 1, std::vector<W>(n_ + 1, weight_zero<W>()));
        for (const auto& e : edges) {
            int u = e.u + 1, v = e.v + 1;
            assert(u >= 1 && u <= n_ && v >= 1 && v <= n_ && u != v);
            if (has_[u][v] && !(w2_[u][v] < e.w + e.w)) continue;
            has_[u][v] = has_[v][u] = 1;
            w2_[u][v] = w2_[v][u] = e.w + e.w;
            worig_[u][v] = worig_[v][u] = e.w;
        }
    }

    std::optional<SolveResult<W>> run() {
        if (n_ == 0) return SolveResult<W>{};
        if (n_ % 2 == 1) return std::nullopt;
        init_state();
        for (int round = 0; round < n_ / 2; ++round) {
            if (!grow_phase()) return std::nullopt;
            dissolve_slack_free_blossoms();
        }
        SolveResult<W> out;
        out.total = weight_zero<W>();
        for (int v = 1; v <= n_; ++v) {
            int m = match_[v];
            assert(m != 0 && match_[m] == v && has_[v][m]);
            if (v < m) {
                out.matching.edges.emplace_back(v - 1, m - 1);
                out.total += worig_[v][m];
            }
        }
        out.matching.normalize();
        return out;
    }

private:
    enum Label : int { kFree = -1, kEven = 0, kOdd = 1 };

    struct Ref {
        int u = 0;  // real endpoint on the source side
        int v = 0;  // real endpoint on the target side
        bool valid() const { return u != 0; }
    };

    int n_, cap_;
    std::vector<std::vector<char>> has_;
    std::vector<std::vector<W>> w2_, worig_;

    std::vector<W> y_;                        // vertex duals (doubled-weight scale)
    std::vector<W> z_;                        // blossom duals
    std::vector<int> match_;                  // id -> matched real vertex on the other side
    std::vector<Ref> pa_;                     // odd top -> tree edge (parent real, own real)
    std::vector<int> top_;                    // real vertex -> its top id
    std::vector<int> parent_;                 // id -> enclosing blossom (0 = top-level)
    std::vector<std::vector<int>> kids_;      // blossom -> children, cyclic, kids[0] = base
    std::vector<std::vector<int>> members_;   // id -> real vertices inside
    std::vector<std::vector<int>> kid_with_;  // blossom -> real vertex -> child id
    std::vector<std::vector<Ref>> rep_;       // cycle edges between sibling children
    std::vector<int> label_;                  // top id -> Label
    std::vector<Ref> best_;                   // top id -> min-slack edge from an even vertex
    std::vector<int> seen_;
    int stamp_ = 0;
    std::deque<int> queue_;
    std::vector<int> newly_even_;
    bool augmented_ = false;

    void init_state() {
        y_.assign(cap_ + 1, weight_zero<W>());
        z_.assign(cap_ + 1, weight_zero<W>());
        match_.assign(cap_ + 1, 0);
        pa_.assign(cap_ + 1, Ref{});
        top_.assign(n_ + 1, 0);
        parent_.assign(cap_ + 1, 0);
        kids_.assign(cap_ + 1, {});
        members_.assign(cap_ + 1, {});
        kid_with_.assign(cap_ + 1, {});
        rep_.assign(cap_ + 1, std::vector<Ref>(cap_ + 1, Ref{}));
        label_.assign(cap_ + 1, kFree);
        best_.assign(cap_ + 1, Ref{});
        seen_.assign(cap_ + 1, 0);

        W max_w2 = weight_zero<W>();
        bool any = false;
        for (int u = 1; u <= n_; ++u)
            for (int v = u + 1; v <= n_; ++v)
                if (has_[u][v] && (!any || max_w2 < w2_[u][v])) {
                    max_w2 = w2_[u][v];
                    any = true;
                }
        W y0 = weight_half(max_w2);
        for (int v = 1; v <= n_; ++v) {
            y_[v] = y0;
            top_[v] = v;
            members_[v] = {v};
        }
    }

    bool is_top(int x) const {
        if (x <= 0) return false;
        if (x <= n_) return top_[x] == x;
        return !kids_[x].empty() && parent_[x] == 0;
    }

    W slack(int u, int v) const {
        assert(has_[u][v]);
        return y_[u] + y_[v] - w2_[u][v];
    }
    W slack(const Ref& r) const { return slack(r.u, r.v); }

    template <typename F>
    void for_each_top(F&& f) const {
        for (int v = 1; v <= n_; ++v)
            if (top_[v] == v) f(v);
        for (int b = n_ + 1; b <= cap_; ++b)
            if (!kids_[b].empty() && parent_[b] == 0) f(b);
    }

    void enqueue_members(int x) {
        for (int v : members_[x]) {
            queue_.push_back(v);
            broadcast_best(v);
        }
    }

    void broadcast_best(int u) {  // u: real vertex that just became even
        int xu = top_[u];
        for (int v = 1; v <= n_; ++v) {
            if (!has_[u][v] || top_[v] == xu) continue;
            update_best(top_[v], Ref{u, v});
        }
    }

    void update_best(int x, const Ref& r) {
        if (!best_[x].valid() || slack(r) < slack(best_[x])) best_[x] = r;
    }

    void recompute_best(int x) {
        best_[x] = Ref{};
        for (int u = 1; u <= n_; ++u) {
            if (top_[u] == x || label_[top_[u]] != kEven) continue;
            for (int v : members_[x])
                if (has_[u][v]) update_best(x, Ref{u, v});
        }
    }

    void set_rep(int x, int y, const Ref& r) {  // r.u on x side
        rep_[x][y] = r;
        rep_[y][x] = Ref{r.v, r.u};
    }

    // ---- phase driver ------------------------------------------------------

    bool grow_phase() {
        label_.assign(cap_ + 1, kFree);
        pa_.assign(cap_ + 1, Ref{});
        best_.assign(cap_ + 1, Ref{});
        queue_.clear();
        augmented_ = false;

        for_each_top([&](int t) {
            if (match_[t] == 0) {
                label_[t] = kEven;
                enqueue_members(t);
            }
        });

        while (true) {
            drain_queue();
            if (augmented_) return true;
            if (!dual_adjust_and_fire()) return false;
            if (augmented_) return true;
        }
    }

    void drain_queue() {
        while (!queue_.empty() && !augmented_) {
            int u = queue_.front();
            queue_.pop_front();
            assert(label_[top_[u]] == kEven);
            for (int v = 1; v <= n_; ++v) {
                if (!has_[u][v] || top_[v] == top_[u]) continue;
                if (slack(u, v) == weight_zero<W>()) {
                    on_tight_edge(u, v);
                    if (augmented_) return;
                } else {
                    update_best(top_[v], Ref{u, v});
                }
            }
        }
    }

    // No delta1 term exists in the perfect-matching variant; an empty
    // candidate set certifies a Hungarian forest, i.e. no perfect matching.
    bool dual_adjust_and_fire() {
        bool found = false;
        W delta = weight_zero<W>();
        auto consider = [&](const W& cand) {
            if (!found || cand < delta) {
                delta = cand;
                found = true;
            }
        };
        for_each_top([&](int x) {
            if (label_[x] == kFree && best_[x].valid()) consider(slack(best_[x]));
            if (label_[x] == kEven && best_[x].valid()) consider(weight_half(slack(best_[x])));
            if (label_[x] == kOdd && x > n_) consider(weight_half(z_[x]));
        });
        if (!found) return false;
        assert(!(delta < weight_zero<W>()));

        for (int v = 1; v <= n_; ++v) {
            if (label_[top_[v]] == kEven)
                y_[v] -= delta;
            else if (label_[top_[v]] == kOdd)
                y_[v] += delta;
        }
        W twice = delta + delta;
        for (int b = n_ + 1; b <= cap_; ++b) {
            if (!is_top(b)) continue;
            if (label_[b] == kEven)
                z_[b] += twice;
            else if (label_[b] == kOdd)
                z_[b] -= twice;
        }

        bool progress = true;
        while (progress && !augmented_) {
            progress = false;
            for (int b = n_ + 1; b <= cap_; ++b)
                if (is_top(b) && label_[b] == kOdd && z_[b] == weight_zero<W>()) {
                    expand_blossom(b);
                    progress = true;
                }
            if (augmented_) break;
            std::vector<int> tops;
            for_each_top([&](int x) { tops.push_back(x); });
            for (int x : tops) {
                if (augmented_) break;
                if (!is_top(x) || (label_[x] != kFree && label_[x] != kEven)) continue;
                if (!best_[x].valid()) continue;
                Ref r = best_[x];
                if (slack(r) == weight_zero<W>()) {
                    on_tight_edge(r.u, r.v);
                    progress = true;
                }
            }
        }
        return true;
    }

    // ---- structural transitions ---------------------------------------------

    void on_tight_edge(int u, int v) {
        int x = top_[u], y = top_[v];
        if (x == y || label_[x] != kEven) return;
        if (label_[y] == kFree) {
            grow(u, v);
        } else if (label_[y] == kEven) {
            int l = lowest_common_top(x, y);
            if (l == 0) {
                augment_path(u, v);
                augmented_ = true;
            } else {
                contract(l, u, v);
            }
        }
    }

    void grow(int u, int v) {
        int y = top_[v];
        label_[y] = kOdd;
        pa_[y] = Ref{u, v};
        int w = match_[y];
        assert(w != 0);
        int t = top_[w];
        assert(label_[t] == kFree);
        label_[t] = kEven;
        enqueue_members(t);
    }

    int lowest_common_top(int x, int y) {
        ++stamp_;
        while (x != 0 || y != 0) {
            if (x != 0) {
                if (seen_[x] == stamp_) return x;
                seen_[x] = stamp_;
                if (match_[x] == 0) {
                    x = 0;
                } else {
                    int o = top_[match_[x]];
                    x = top_[pa_[o].u];
                }
            }
            std::swap(x, y);
        }
        return 0;
    }

    // even tops x .. l inclusive, with the odd tops between them
    std::vector<int> path_to(int x, int l) {
        std::vector<int> path;
        while (true) {
            path.push_back(x);
            if (x == l) break;
            assert(match_[x] != 0);
            int o = top_[match_[x]];
            path.push_back(o);
            x = top_[pa_[o].u];
        }
        return path;
    }

    int fresh_slot() const {
        for (int b = n_ + 1; b <= cap_; ++b)
            if (kids_[b].empty()) return b;
        throw std::logic_error("blossom slots exhausted");
    }

    void contract(int l, int u, int v) {
        int b = fresh_slot();
        auto px = path_to(top_[u], l);
        auto py = path_to(top_[v], l);

        std::vector<int>& cycle = kids_[b];
        cycle.assign(px.rbegin(), px.rend());
        cycle.insert(cycle.end(), py.begin(), py.end() - 1);

        auto link_tree_path = [&](const std::vector<int>& path) {
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                int a = path[i], c = path[i + 1];
                if (i % 2 == 0)
                    set_rep(a, c, Ref{match_[c], match_[a]});  // matched pair
                else
                    set_rep(a, c, Ref{pa_[a].v, pa_[a].u});  // tree edge up
            }
        };
        link_tree_path(px);
        link_tree_path(py);
        set_rep(top_[u], top_[v], Ref{u, v});

        label_[b] = kEven;
        z_[b] = weight_zero<W>();
        match_[b] = match_[l];
        pa_[b] = pa_[l];
        members_[b].clear();
        kid_with_[b].assign(n_ + 1, 0);
        newly_even_.clear();
        for (int c : cycle) {
            parent_[c] = b;
            if (label_[c] == kOdd) newly_even_.push_back(c);
            for (int m : members_[c]) {
                members_[b].push_back(m);
                kid_with_[b][m] = c;
            }
        }
        for (int m : members_[b]) top_[m] = b;
        recompute_best(b);
        for (int c : newly_even_) enqueue_members(c);
    }

    // Aligns x so its base child contains u, rematching the internal cycle,
    // then records the external matched edge (u, v).
    void set_match_top(int x, int u, int v) {
        match_[x] = v;
        if (x <= n_) {
            assert(x == u);
            return;
        }
        std::vector<int>& cyc = kids_[x];
        int c = kid_with_[x][u];
        int pr = 0;
        while (cyc[pr] != c) ++pr;
        if (pr % 2 == 1) {
            std::reverse(cyc.begin() + 1, cyc.end());
            pr = static_cast<int>(cyc.size()) - pr;
        }
        for (int i = 0; i < pr; i += 2) {
            Ref r = rep_[cyc[i]][cyc[i + 1]];
            assert(r.valid());
            set_match_top(cyc[i], r.u, r.v);
            set_match_top(cyc[i + 1], r.v, r.u);
        }
        set_match_top(c, u, v);
        std::rotate(cyc.begin(), cyc.begin() + pr, cyc.end());
    }

    void augment_path(int u, int v) {
        augment_half(u, v);
        augment_half(v, u);
    }

    void augment_half(int u, int v) {
        while (true) {
            int x = top_[u];
            int old = match_[x];
            set_match_top(x, u, v);
            if (old == 0) return;
            int o = top_[old];
            Ref tree = pa_[o];
            set_match_top(o, tree.v, tree.u);
            u = tree.u;
            v = tree.v;
        }
    }

    void expand_blossom(int b) {  // odd top blossom with zero dual
        assert(b > n_ && is_top(b) && label_[b] == kOdd && z_[b] == weight_zero<W>());
        for (int c : kids_[b]) {
            parent_[c] = 0;
            for (int m : members_[c]) top_[m] = c;
        }

        int entry = kid_with_[b][pa_[b].v];
        {
            int pr = 0;
            while (kids_[b][pr] != entry) ++pr;
            if (pr % 2 == 1) std::reverse(kids_[b].begin() + 1, kids_[b].end());
        }
        std::vector<int> cyc = kids_[b];
        int idx = 0;
        while (cyc[idx] != entry) ++idx;

        for (int j = 0; j <= idx; ++j) {
            int c = cyc[j];
            if (j % 2 == 0) {
                label_[c] = kOdd;
                pa_[c] = (j == idx) ? pa_[b] : Ref{rep_[cyc[j + 1]][c].u, rep_[cyc[j + 1]][c].v};
            } else {
                label_[c] = kEven;
            }
        }
        for (std::size_t j = idx + 1; j < cyc.size(); ++j) label_[cyc[j]] = kFree;

        kids_[b].clear();
        members_[b].clear();
        kid_with_[b].clear();
        label_[b] = kFree;

        for (int c : cyc) recompute_best(c);
        for (int j = 1; j <= idx; j += 2) enqueue_members(cyc[j]);
    }

    // Blossoms whose dual returned to zero impose no constraint; dissolving
    // them between phases keeps every matching expressible in the surface
    // graph.
    void dissolve_slack_free_blossoms() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int b = n_ + 1; b <= cap_; ++b) {
                if (!is_top(b) || !(z_[b] == weight_zero<W>())) continue;
                for (int c : kids_[b]) {
                    parent_[c] = 0;
                    for (int m : members_[c]) top_[m] = c;
                }
                kids_[b].clear();
                members_[b].clear();
                kid_with_[b].clear();
                changed = true;
            }
        }
    }
};

}  // namespace detail
}  // namespace pmg
