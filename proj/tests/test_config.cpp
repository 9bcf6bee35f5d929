#include "doctest.h"
#include "edgecache/config.hpp"

using namespace edgecache;

TEST_CASE("an empty object parses to the embedded defaults") {
  const auto config = parse_config("{}");
  CHECK(config.sps_count == 80);
  CHECK(config.sbs_count == 150);
  CHECK(config.ue_count == 400);
  CHECK(config.video_count == 100);
  CHECK(config.backhaul_total_mbit == 80.0);
  CHECK(config.radio_total_mbit == 180.0);
  CHECK(config.popularity_mode == PopularityMode::zipf);
  CHECK(config.request_mode == RequestMode::popularity_weighted);
  CHECK(config.connectivity == Connectivity::complete);
  CHECK(config == ScenarioConfig{});
}

TEST_CASE("strict parsing") {
  SUBCASE("unknown keys are errors") {
    CHECK_THROWS_AS(parse_config(R"({"spf_count": 3})"), ConfigError);
  }
  SUBCASE("wrong types are errors") {
    CHECK_THROWS_AS(parse_config(R"({"sps_count": "eighty"})"), ConfigError);
  }
  SUBCASE("invalid JSON is an error") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
  }
  SUBCASE("non-object roots are errors") {
    CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
  }
  SUBCASE("bad enum values are errors") {
    CHECK_THROWS_AS(parse_config(R"({"popularity_mode": "zapf"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"request_mode": "zipf"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"connectivity": "sparse"})"), ConfigError);
  }
}

TEST_CASE("validation bounds") {
  CHECK_THROWS_AS(parse_config(R"({"gamma": 1.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"beta_list": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"beta_list": [0.0]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"beta_list": [1.2]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"request_sweep": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"request_sweep": [-1]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seeds": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"zipf_exponent": 0.0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sbs_count": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"connection_probability": 2.0})"), ConfigError);
}

TEST_CASE("field overrides apply") {
  const auto config = parse_config(
      R"({"sps_count": 4, "beta_list": [0.5, 1.0], "popularity_mode": "social",
          "request_mode": "strict_uniform", "connectivity": "random",
          "connection_probability": 0.7, "seeds": [9]})");
  CHECK(config.sps_count == 4);
  CHECK(config.beta_list == std::vector<double>{0.5, 1.0});
  CHECK(config.popularity_mode == PopularityMode::social);
  CHECK(config.request_mode == RequestMode::strict_uniform);
  CHECK(config.connectivity == Connectivity::random);
  CHECK(config.connection_probability == 0.7);
  CHECK(config.seeds == std::vector<std::uint64_t>{9});
}

TEST_CASE("serialization round-trips semantically") {
  const auto original = parse_config(
      R"({"sbs_count": 12, "gamma": 0.25, "request_sweep": [10, 20, 30],
          "popularity_mode": "social", "video_quota_cap": 3})");
  const auto round_tripped = parse_config(serialize_config(original));
  CHECK(round_tripped == original);
  CHECK(parse_config(serialize_config(ScenarioConfig{})) == ScenarioConfig{});
}
