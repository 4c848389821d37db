#include "pmg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "pmg/reductions.hpp"

namespace pmg {

namespace {

double unit_interval(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Knuth product method; deterministic given the generator state.
int poisson_draw(std::mt19937_64& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= unit_interval(rng);
    } while (p > limit);
    return k - 1;
}

struct PoolVertex {
    std::string id;
    int country;
};

struct Pool {
    std::vector<PoolVertex> vertices;
    std::map<std::pair<std::string, std::string>, Rational> arcs;  // by vertex id
    long next_serial = 1;

    void add_vertex(const SimConfig& config, std::mt19937_64& rng, int country) {
        PoolVertex fresh{"c" + std::to_string(country + 1) + "." + std::to_string(next_serial++),
                         country};
        for (const PoolVertex& other : vertices) {
            // edge weight drawn per unordered pair; arcs carry half of it
            Rational w = Rational(1);
            if (config.mode == SimConfig::Mode::kDirected &&
                unit_interval(rng) < 0.5)
                w = Rational(1) - config.epsilon;
            Rational h = w.half();
            if (unit_interval(rng) < config.compat_prob) arcs[{other.id, fresh.id}] = h;
            if (unit_interval(rng) < config.compat_prob) arcs[{fresh.id, other.id}] = h;
        }
        vertices.push_back(std::move(fresh));
    }

    void remove_matched(const std::vector<std::string>& matched) {
        auto gone = [&](const std::string& id) {
            return std::find(matched.begin(), matched.end(), id) != matched.end();
        };
        vertices.erase(std::remove_if(vertices.begin(), vertices.end(),
                                      [&](const PoolVertex& v) { return gone(v.id); }),
                       vertices.end());
        for (auto it = arcs.begin(); it != arcs.end();)
            it = gone(it->first.first) || gone(it->first.second) ? arcs.erase(it) : ++it;
    }
};

// countries with at least one pair present form the round game
struct RoundGame {
    PartitionedGame game;
    std::vector<int> present;  // game player -> country
};

RoundGame build_round_game(const SimConfig& config, const Pool& pool) {
    std::vector<std::string> ids;
    std::vector<int> country_of;
    for (const PoolVertex& v : pool.vertices) {
        ids.push_back(v.id);
        country_of.push_back(v.country);
    }
    VertexTable table(ids);
    std::vector<Arc> arcs;
    for (const auto& [key, w] : pool.arcs)
        arcs.push_back({table.index_of(key.first), table.index_of(key.second), w});

    std::vector<int> present;
    std::vector<std::vector<int>> classes;
    for (int c = 0; c < config.countries; ++c) {
        std::vector<int> cls;
        for (int v = 0; v < static_cast<int>(country_of.size()); ++v)
            if (country_of[v] == c) cls.push_back(v);
        if (!cls.empty()) {
            present.push_back(c);
            classes.push_back(std::move(cls));
        }
    }
    if (present.empty()) return {PartitionedGame{}, {}};
    DirectedCompatibilityGraph g(std::move(table), std::move(arcs));
    Partition partition(std::move(classes), static_cast<int>(ids.size()));
    bool uniform = config.mode == SimConfig::Mode::kUniform;
    return {PartitionedGame::from_directed(std::move(g), std::move(partition), uniform), present};
}

Rational mode_scale_total(const SimConfig& config, const Rational& grand) {
    return config.mode == SimConfig::Mode::kUniform ? grand + grand : grand;
}

Allocation initial_allocation(const SimConfig& config, const PartitionedGame& game) {
    int n = game.player_count();
    Allocation y(n);
    if (config.solution_concept == SimConfig::Concept::kEqualSplit) {
        Rational share = mode_scale_total(config, game.grand_value()) / Rational(n);
        for (int p = 0; p < n; ++p) y.values[p] = share;
        return y;
    }
    Allocation phi = shapley_value(game, config.shapley_bound);
    for (int p = 0; p < n; ++p)
        y.values[p] = config.mode == SimConfig::Mode::kUniform ? phi.values[p] + phi.values[p]
                                                               : phi.values[p];
    return y;
}

Matching pick_matching(const SimConfig& config, const PartitionedGame& game,
                       const Allocation& target) {
    switch (config.rule) {
        case SimConfig::Rule::kLexmin:
            if (config.mode == SimConfig::Mode::kUniform)
                return lexmin_uniform(game, target).matching;
            return lexmin_bruteforce(game, target, config.brute).first;
        case SimConfig::Rule::kMinimalBruteforce:
            return minimal_matching_bruteforce(game, target, config.brute).first;
    }
    throw std::logic_error("unreachable");
}

}  // namespace

StepOutcome step_round(const SimConfig& config, const PartitionedGame& game, const Allocation& y,
                       const std::vector<Rational>& credits, int round_index) {
    int n = game.player_count();
    if (y.size() != n || static_cast<int>(credits.size()) != n)
        throw std::invalid_argument("allocation size mismatch");
    Rational grand = game.grand_value();
    if (y.total() != mode_scale_total(config, grand))
        throw NotAnAllocation("initial allocation does not sum to the round total");

    Allocation target(n);
    for (int p = 0; p < n; ++p) target.values[p] = y.values[p] + credits[p];
    Matching m = pick_matching(config, game, target);
    auto u = mode_utilities(game, m);

    StepOutcome out;
    out.matching = m;
    out.trace.round = round_index;
    out.trace.value = grand;
    out.trace.pool_size = game.graph().vertex_count();
    out.next_credits.resize(n);
    for (int p = 0; p < n; ++p) {
        CountryRound row;
        row.y = y.values[p];
        row.c_in = credits[p];
        row.x = target.values[p];
        row.u = u[p];
        row.c_out = target.values[p] - u[p];
        out.next_credits[p] = row.c_out;
        out.trace.countries.push_back(std::move(row));
    }
    for (auto [a, b] : m.edges)
        out.trace.matching.emplace_back(game.graph().vertices().id(a),
                                        game.graph().vertices().id(b));
    return out;
}

std::vector<RoundTrace> run_simulation(const SimConfig& config) {
    if (config.countries < 1) throw std::invalid_argument("at least one country required");
    if (config.compat_prob < 0.0 || config.compat_prob > 1.0)
        throw std::invalid_argument("compatibility probability must lie in [0,1]");
    if (config.arrival_rate < 0.0) throw std::invalid_argument("arrival rate must be nonnegative");
    std::vector<int> pool_sizes = config.initial_pool;
    if (pool_sizes.empty()) pool_sizes.assign(config.countries, 0);
    if (pool_sizes.size() == 1) pool_sizes.assign(config.countries, pool_sizes[0]);
    if (static_cast<int>(pool_sizes.size()) != config.countries)
        throw std::invalid_argument("one initial pool size per country required");

    std::mt19937_64 rng(config.seed);
    Pool pool;
    for (int c = 0; c < config.countries; ++c)
        for (int i = 0; i < pool_sizes[c]; ++i) pool.add_vertex(config, rng, c);

    std::vector<Rational> credits(config.countries);  // zero for the first round
    std::vector<RoundTrace> traces;
    for (int round = 1; round <= config.rounds; ++round) {
        RoundGame rg = build_round_game(config, pool);
        RoundTrace trace;
        trace.round = round;
        trace.pool_size = static_cast<int>(pool.vertices.size());
        trace.countries.resize(config.countries);
        std::vector<std::string> matched_ids;

        if (!rg.present.empty()) {
            int np = rg.game.player_count();
            Allocation y = initial_allocation(config, rg.game);
            std::vector<Rational> sub_credits(np);
            for (int p = 0; p < np; ++p) sub_credits[p] = credits[rg.present[p]];
            StepOutcome step = step_round(config, rg.game, y, sub_credits, round);
            trace.value = step.trace.value;
            trace.matching = step.trace.matching;
            for (int p = 0; p < np; ++p) {
                trace.countries[rg.present[p]] = step.trace.countries[p];
                credits[rg.present[p]] = step.next_credits[p];
            }
            for (auto& [a, b] : step.trace.matching) {
                matched_ids.push_back(a);
                matched_ids.push_back(b);
            }
        }
        // absent countries: y = u = 0, credits pass through as the target
        for (int c = 0; c < config.countries; ++c) {
            bool present = std::find(rg.present.begin(), rg.present.end(), c) != rg.present.end();
            if (!present) {
                CountryRound row;
                row.c_in = credits[c];
                row.x = credits[c];
                row.c_out = credits[c];
                trace.countries[c] = row;
            }
        }
        traces.push_back(std::move(trace));

        pool.remove_matched(matched_ids);
        for (int c = 0; c < config.countries; ++c) {
            int arrivals = poisson_draw(rng, config.arrival_rate);
            for (int i = 0; i < arrivals; ++i) pool.add_vertex(config, rng, c);
        }
    }
    return traces;
}

std::string traces_to_csv(const std::vector<RoundTrace>& traces, std::uint64_t seed) {
    std::ostringstream out;
    out << "# seed=" << seed << "\n";
    out << "round,country,y,c_in,x,s_or_u,c_out\n";
    for (const RoundTrace& t : traces)
        for (std::size_t c = 0; c < t.countries.size(); ++c) {
            const CountryRound& row = t.countries[c];
            out << t.round << ',' << c + 1 << ',' << row.y.str() << ',' << row.c_in.str() << ','
                << row.x.str() << ',' << row.u.str() << ',' << row.c_out.str() << '\n';
        }
    return out.str();
}

}  // namespace pmg
