#include "pmg/lexmin.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pmg {

int lex_compare(const DeviationVector& a, const DeviationVector& b) {
    std::size_t k = std::min(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (a.entries[i] < b.entries[i]) return -1;
        if (b.entries[i] < a.entries[i]) return 1;
    }
    if (a.entries.size() != b.entries.size())
        return a.entries.size() < b.entries.size() ? -1 : 1;
    return 0;
}

DeviationVector deviation_vector(const PartitionedGame& game, const Matching& m,
                                 const Allocation& target) {
    if (target.size() != game.player_count())
        throw std::invalid_argument("target has the wrong player count");
    auto u = mode_utilities(game, m);
    DeviationVector d;
    d.entries.reserve(u.size());
    for (int p = 0; p < game.player_count(); ++p)
        d.entries.push_back((target.values[p] - u[p]).abs());
    std::sort(d.entries.begin(), d.entries.end(), [](const Rational& a, const Rational& b) {
        return b < a;
    });
    return d;
}

namespace {

// int64 probe workhorse shared by feasibility_probe and lexmin_uniform;
// weights come from the substrate graph scaled to integers when uniform,
// otherwise probes run on exact rationals.
struct ProbeContext {
    const PartitionedGame& game;
    std::vector<WeightedEdgeIn<std::int64_t>> int_edges;   // uniform path
    std::vector<WeightedEdgeIn<Rational>> rat_edges;       // general path
    bool integral;
    std::int64_t int_wstar = 0;
    Rational rat_wstar;
    long solves = 0;
    long budget;

    ProbeContext(const PartitionedGame& g, long budget_in) : game(g), budget(budget_in) {
        integral = g.uniform();
        for (const Edge& e : g.graph().edges()) {
            if (integral) int_edges.push_back({e.u, e.v, 1});
            rat_edges.push_back({e.u, e.v, e.weight});
        }
        if (integral)
            int_wstar = max_weight_matching<std::int64_t>(g.graph().vertex_count(), int_edges).total;
        else
            rat_wstar = max_weight_matching<Rational>(g.graph().vertex_count(), rat_edges).total;
    }

    std::optional<Matching> solve(const IntervalConstraints& cons) {
        if (++solves > budget) throw BranchBudgetExceeded("feasibility probe budget exhausted");
        if (integral)
            return interval_constrained_optimal_matching<std::int64_t>(
                game.graph().vertex_count(), int_edges, game.partition().classes(), cons, int_wstar);
        return interval_constrained_optimal_matching<Rational>(
            game.graph().vertex_count(), rat_edges, game.partition().classes(), cons, rat_wstar);
    }

    // Branch over side assignments of the two-point sets, pruning with the
    // interval hull of every unassigned set.
    std::optional<Matching> probe(const std::vector<AdmissibleSet>& sets) {
        std::vector<int> two_point;
        IntervalConstraints cons;
        cons.per_class.resize(sets.size());
        for (std::size_t p = 0; p < sets.size(); ++p) {
            if (sets[p].kind == AdmissibleSet::kInterval) {
                cons.per_class[p] = sets[p].interval;
            } else {
                two_point.push_back(static_cast<int>(p));
                cons.per_class[p] =
                    Interval::closed(Rational(sets[p].lo_point), Rational(sets[p].hi_point));
            }
        }
        return branch(sets, cons, two_point, 0);
    }

    std::optional<Matching> branch(const std::vector<AdmissibleSet>& sets, IntervalConstraints& cons,
                                   const std::vector<int>& two_point, std::size_t depth) {
        auto relaxed = solve(cons);
        if (!relaxed) return std::nullopt;
        if (depth == two_point.size()) return relaxed;
        // the hull witness may already sit on admissible points
        if (two_point_consistent(sets, *relaxed)) return relaxed;
        int p = two_point[depth];
        for (long side : {sets[p].lo_point, sets[p].hi_point}) {
            Interval saved = cons.per_class[p];
            cons.per_class[p] = Interval::point(Rational(side));
            auto got = branch(sets, cons, two_point, depth + 1);
            cons.per_class[p] = saved;
            if (got) return got;
        }
        return std::nullopt;
    }

    bool two_point_consistent(const std::vector<AdmissibleSet>& sets, const Matching& m) const {
        auto s = country_kidney_counts(game, m);
        for (std::size_t p = 0; p < sets.size(); ++p)
            if (sets[p].kind == AdmissibleSet::kTwoPoint && s[p] != sets[p].lo_point &&
                s[p] != sets[p].hi_point)
                return false;
        return true;
    }
};

// Admissible set for "deviation of player p equals d": the attainable
// integers among {x_p - d, x_p + d}. Empty -> infeasible.
std::optional<AdmissibleSet> equality_set(const Rational& x, const Rational& d, int class_size) {
    std::vector<long> points;
    for (const Rational& cand : {x - d, x + d}) {
        if (!cand.is_integer()) continue;
        mpz_class z = cand.numerator();
        if (z < 0 || z > class_size) continue;
        long val = z.get_si();
        if (points.empty() || points.back() != val) points.push_back(val);
    }
    if (points.empty()) return std::nullopt;
    if (points.size() == 1) return AdmissibleSet::of(Interval::point(Rational(points[0])));
    return AdmissibleSet::two_point(points[0], points[1]);
}

}  // namespace

std::optional<Matching> feasibility_probe(const PartitionedGame& game,
                                          const std::vector<AdmissibleSet>& sets,
                                          long solve_budget) {
    if (static_cast<int>(sets.size()) != game.player_count())
        throw std::invalid_argument("one admissible set per player required");
    ProbeContext ctx(game, solve_budget);
    return ctx.probe(sets);
}

LexminResult lexmin_uniform(const PartitionedGame& game, const Allocation& target,
                            long solve_budget) {
    if (!game.uniform()) throw std::invalid_argument("lexmin_uniform requires a uniform game");
    if (target.size() != game.player_count())
        throw std::invalid_argument("target has the wrong player count");
    int n = game.player_count();
    ProbeContext ctx(game, solve_budget);

    std::vector<std::optional<Rational>> finished(n);
    std::vector<int> unfinished;
    for (int p = 0; p < n; ++p) unfinished.push_back(p);

    LevelStructure levels;
    std::optional<Rational> prev_level;

    auto build_sets = [&](const std::optional<Rational>& open_bound,
                          const std::vector<int>& strict) -> std::optional<std::vector<AdmissibleSet>> {
        std::vector<AdmissibleSet> sets(n, AdmissibleSet::of(Interval::closed(Rational(0), Rational(0))));
        for (int p = 0; p < n; ++p) {
            long size = static_cast<long>(game.partition().classes()[p].size());
            if (finished[p]) {
                auto eq = equality_set(target.values[p], *finished[p], static_cast<int>(size));
                if (!eq) return std::nullopt;
                sets[p] = *eq;
            } else if (open_bound) {
                bool is_strict = std::find(strict.begin(), strict.end(), p) != strict.end();
                Interval iv{target.values[p] - *open_bound, target.values[p] + *open_bound,
                            is_strict, is_strict};
                sets[p] = AdmissibleSet::of(iv);
            } else {
                sets[p] = AdmissibleSet::of(Interval::closed(Rational(0), Rational(size)));
            }
        }
        return sets;
    };

    auto feasible = [&](const Rational& d, const std::vector<int>& strict) -> std::optional<Matching> {
        auto sets = build_sets(d, strict);
        if (!sets) return std::nullopt;
        return ctx.probe(*sets);
    };

    Matching witness;
    while (!unfinished.empty()) {
        // candidate level values: attainable deviations of unfinished players
        std::set<Rational> cand_set;
        for (int p : unfinished) {
            long size = static_cast<long>(game.partition().classes()[p].size());
            for (long s = 0; s <= size; ++s) {
                Rational d = (target.values[p] - Rational(s)).abs();
                if (!prev_level || d < *prev_level) cand_set.insert(d);
            }
        }
        std::vector<Rational> cands(cand_set.begin(), cand_set.end());
        if (cands.empty()) throw std::logic_error("level candidate set cannot be empty");

        // smallest feasible candidate; feasibility is monotone in d
        long lo = 0, hi = static_cast<long>(cands.size()) - 1;
        std::optional<Matching> hi_witness = feasible(cands[hi], {});
        if (!hi_witness) throw std::logic_error("largest candidate level must be feasible");
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            if (auto m = feasible(cands[mid], {})) {
                hi = mid;
                hi_witness = std::move(m);
            } else {
                lo = mid + 1;
            }
        }
        Rational d_t = cands[hi];
        witness = *hi_witness;

        // inclusion-minimal newly finished set: greedily force players
        // strictly below d_t, keeping those that cannot be forced
        std::vector<int> strict;
        for (int p : unfinished) {
            strict.push_back(p);
            auto m = feasible(d_t, strict);
            if (m)
                witness = *m;
            else
                strict.pop_back();
        }
        std::vector<int> newly;
        for (int p : unfinished)
            if (std::find(strict.begin(), strict.end(), p) == strict.end()) newly.push_back(p);
        if (newly.empty()) throw std::logic_error("level must finish at least one player");
        for (int p : newly) finished[p] = d_t;
        levels.levels.push_back(d_t);
        levels.classes.push_back(newly);
        unfinished = strict;
        prev_level = d_t;
    }

    auto final_sets = build_sets(std::nullopt, {});
    if (!final_sets) throw std::logic_error("final equality system must be feasible");
    auto final_witness = ctx.probe(*final_sets);
    if (!final_witness) throw std::logic_error("final probe must produce a witness");

    LexminResult out;
    out.matching = *final_witness;
    out.levels = std::move(levels);
    out.deviation = deviation_vector(game, out.matching, target);
    return out;
}

Matching lexmin_width1_directed(const PartitionedGame& game, const Allocation& target) {
    if (game.width() != 1) throw std::invalid_argument("width-1 game required");
    if (!game.directed()) throw std::invalid_argument("directed game required");
    if (target.size() != game.player_count())
        throw std::invalid_argument("target has the wrong player count");

    const DirectedCompatibilityGraph& d = game.directed_graph();
    int n = d.vertex_count();
    // player order follows partition classes; map to vertex-indexed targets
    std::vector<Rational> x(n + 1);
    for (int p = 0; p < game.player_count(); ++p)
        x[game.partition().classes()[p][0]] = target.values[p];

    int m = n % 2 == 1 ? n + 1 : n;  // dummy vertex with target 0 when odd
    // pairs without a derived edge behave as zero-weight padding: matching
    // along them leaves the receiver without a transplant
    auto arc_w = [&](int from, int to) -> Rational {
        if (from >= n || to >= n) return Rational(0);
        if (!game.graph().has_edge(from, to)) return Rational(0);
        auto w = d.arc_weight(from, to);
        return w ? *w : Rational(0);
    };

    // delta_{pq} = |x_p - w_qp|: deviation of p when matched along pq
    std::vector<std::vector<Rational>> delta(m, std::vector<Rational>(m));
    std::set<Rational> values;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            if (p == q) continue;
            delta[p][q] = (x[std::min(p, n)] - arc_w(q, p)).abs();
            values.insert(delta[p][q]);
        }
    std::map<Rational, unsigned long> rank;
    unsigned long r = 0;
    for (const Rational& v : values) rank[v] = r++;

    mpz_class base(2 * m * (m - 1) + 1);
    std::vector<WeightedEdgeIn<LexPair>> edges;
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            Rational primary = arc_w(p, q) + arc_w(q, p);
            Rational penalty = pow_rational(base, rank[delta[p][q]]) +
                               pow_rational(base, rank[delta[q][p]]);
            edges.push_back({p, q, LexPair{primary, -penalty}});
        }
    auto solved = max_weight_perfect_matching<LexPair>(m, edges);
    if (!solved) throw std::logic_error("complete closure always has a perfect matching");

    Matching out;
    for (auto [u, v] : solved->matching.edges)
        if (u < n && v < n && game.graph().has_edge(u, v)) out.edges.emplace_back(u, v);
    out.normalize();
    return out;
}

std::pair<Matching, Rational> minimal_matching_bruteforce(const PartitionedGame& game,
                                                          const Allocation& target,
                                                          EnumerateOptions opt) {
    std::optional<Matching> best;
    Rational best_dev;
    enumerate_optimal_matchings(game.graph(), [&](const Matching& m, const Rational&) {
        Rational dev = deviation_vector(game, m, target).max_entry();
        if (!best || dev < best_dev) {
            best = m;
            best_dev = dev;
        }
    }, opt);
    if (!best) throw std::logic_error("optimal matching family cannot be empty");
    return {*best, best_dev};
}

std::pair<Matching, DeviationVector> lexmin_bruteforce(const PartitionedGame& game,
                                                       const Allocation& target,
                                                       EnumerateOptions opt) {
    std::optional<Matching> best;
    DeviationVector best_dev;
    enumerate_optimal_matchings(game.graph(), [&](const Matching& m, const Rational&) {
        DeviationVector dev = deviation_vector(game, m, target);
        if (!best || lex_compare(dev, best_dev) < 0) {
            best = m;
            best_dev = std::move(dev);
        }
    }, opt);
    if (!best) throw std::logic_error("optimal matching family cannot be empty");
    return {*best, best_dev};
}

}  // namespace pmg
