#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pmg/json_io.hpp"

using namespace pmg;
using namespace pmgtest;

TEST_CASE("instance round trip") {
    auto game = example2_game(false);
    auto text = partitioned_instance_json(game).dump();
    auto back = parse_instance_text(text);
    REQUIRE(back.graph.has_value());
    auto rebuilt = back.to_partitioned(false);
    CHECK(rebuilt.player_count() == 2);
    CHECK(rebuilt.grand_value() == Rational(4));
    CHECK(partitioned_instance_json(rebuilt).dump() == text);
}

TEST_CASE("b-matching instance round trip") {
    std::vector<int> caps = {1, 2, 1, 1, 3, 1};
    BMatchingGame game(fig1_graph(), caps);
    auto text = bmatching_instance_json(game).dump();
    auto back = parse_instance_text(text);
    CHECK(back.is_bmatching());
    auto rebuilt = back.to_bmatching();
    CHECK(rebuilt.grand_value() == Rational(10));
    CHECK(bmatching_instance_json(rebuilt).dump() == text);
}

TEST_CASE("compact instances expand lazily") {
    auto parsed = parse_instance_text(R"({"compact_cycles":[{"a":5,"L":"5"}]})");
    REQUIRE(parsed.is_compact());
    CHECK(parsed.compact->expand().graph().vertex_count() == 24);
    CHECK_THROWS_AS(parse_instance_text(R"({"compact_cycles":[{"a":5,"L":"7"}]})"), ParseError);
}

TEST_CASE("parse errors carry context") {
    CHECK_THROWS_AS(parse_instance_text("{"), ParseError);
    CHECK_THROWS_AS(parse_instance_text(R"({"vertices":[1]})"), ParseError);
    CHECK_THROWS_AS(parse_instance_text(R"({"vertices":["a"],"arcs":[{"from":"a","to":"zz","w":"1"}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text(R"({"vertices":["a","b"],"arcs":[{"from":"a","to":"b","w":"1.5"}]})"),
                    ParseError);
}

TEST_CASE("weight zero fails validation, not parsing") {
    auto parsed = parse_instance_text(R"({"vertices":["a","b"],"arcs":[{"from":"a","to":"b","w":"0"}]})");
    CHECK_THROWS_AS(parsed.to_partitioned(false), ValidationError);
}

TEST_CASE("allocations") {
    auto x = parse_allocation_text(R"({"values":{"1":"7/2","2":"1/2"}})", 2);
    CHECK(x.values[0] == Rational(7, 2));
    CHECK(x.values[1] == Rational(1, 2));
    CHECK_THROWS_AS(parse_allocation_text(R"({"values":{"5":"1"}})", 2), ParseError);
    CHECK(allocation_json(x)["values"]["1"] == "7/2");
}

TEST_CASE("red-blue instances") {
    RedBlueGraph rb = gen_epm_instance(6, 0.8, 0.5, 2, 42);
    auto text = red_blue_instance_json(rb).dump();
    auto back = parse_instance_text(text).to_red_blue();
    CHECK(back.k == 2);
    CHECK(back.graph.edges().size() == rb.graph.edges().size());
    CHECK(back.red == rb.red);
}

TEST_CASE("sim config parsing") {
    write_file("/tmp/pmg_cfg_test.json", R"({
        "countries": 3, "initial_pool": [2,2,2], "arrival_rate": 0.5,
        "compat_prob": 0.4, "rounds": 7, "seed": 9,
        "concept": "shapley", "rule": "minimal-bruteforce", "mode": "directed",
        "epsilon": "1/4"})");
    auto cfg = parse_sim_config_file("/tmp/pmg_cfg_test.json");
    CHECK(cfg.countries == 3);
    CHECK(cfg.rounds == 7);
    CHECK(cfg.seed == 9);
    CHECK(cfg.solution_concept == SimConfig::Concept::kShapley);
    CHECK(cfg.rule == SimConfig::Rule::kMinimalBruteforce);
    CHECK(cfg.mode == SimConfig::Mode::kDirected);
    CHECK(cfg.epsilon == Rational(1, 4));
}
