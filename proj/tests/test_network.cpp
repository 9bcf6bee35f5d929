#include <cmath>

#include "doctest.h"
#include "edgecache/network.hpp"

using namespace edgecache;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig config;
  config.sps_count = 3;
  config.sbs_count = 4;
  config.ue_count = 12;
  config.video_count = 10;
  config.category_count = 3;
  config.friendship_probability = 0.4;
  return config;
}

}  // namespace

TEST_CASE("degenerate single-link topology gets the full budgets") {
  ScenarioConfig config;
  config.sps_count = 1;
  config.sbs_count = 1;
  config.ue_count = 1;
  const auto topo = generate_topology(config, 1);
  CHECK(topo.backhaul_capacity(0, 0) == doctest::Approx(80.0));
  CHECK(topo.radio_capacity(0, 0) == doctest::Approx(180.0));
}

TEST_CASE("reference-scale topology conserves the configured budgets") {
  const ScenarioConfig config;  // defaults are the reference scale
  const auto topo = generate_topology(config, 7);

  for (int u = 0; u < topo.ue_count; ++u) {
    const int sbs = topo.attachment[u];
    CHECK(sbs >= 0);
    CHECK(sbs < topo.sbs_count);
  }

  double backhaul_sum = 0.0;
  for (double b : topo.backhaul) backhaul_sum += b;
  CHECK(backhaul_sum == doctest::Approx(config.backhaul_total_mbit).epsilon(1e-9));

  const double per_sbs_radio = config.radio_total_mbit / config.sbs_count;
  for (int j = 0; j < topo.sbs_count; ++j) {
    if (topo.attached_ues[j].empty()) continue;
    double sum = 0.0;
    for (int u : topo.attached_ues[j]) sum += topo.ue_radio[u];
    CHECK(sum == doctest::Approx(per_sbs_radio).epsilon(1e-9));
  }

  // Default scale keeps each backhaul link slower than any radio link.
  double slowest_radio = 1e300;
  for (double r : topo.ue_radio) slowest_radio = std::min(slowest_radio, r);
  for (double b : topo.backhaul) {
    if (b > 0) CHECK(b < slowest_radio);
  }
}

TEST_CASE("topology generation is deterministic in the seed") {
  const auto config = small_config();
  CHECK(generate_topology(config, 42) == generate_topology(config, 42));
  CHECK(generate_world(config, 42) == generate_world(config, 42));
}

TEST_CASE("a connectivity draw leaving an SBS without any SPS is rejected") {
  auto config = small_config();
  config.connectivity = Connectivity::random;
  config.connection_probability = 0.0;
  CHECK_THROWS_AS(generate_topology(config, 1), std::invalid_argument);
}

TEST_CASE("friendship generation spans the degenerate probabilities") {
  auto config = small_config();
  config.ue_count = 3;

  SUBCASE("probability zero leaves everyone isolated") {
    config.friendship_probability = 0.0;
    const auto world = generate_world(config, 5);
    for (int u = 0; u < 3; ++u) CHECK(world.social.degree(u) == 0);
  }
  SUBCASE("probability one yields the complete triangle") {
    config.friendship_probability = 1.0;
    const auto world = generate_world(config, 5);
    for (int u = 0; u < 3; ++u) CHECK(world.social.degree(u) == 2);
  }
}

TEST_CASE("generated social worlds are structurally consistent") {
  const auto config = small_config();
  const auto world = generate_world(config, 11);
  const int N = config.ue_count;

  for (int a = 0; a < N; ++a) {
    for (int b : world.social.friends[a]) {
      CHECK(a != b);
      CHECK(world.social.are_friends(b, a));
    }
  }

  // Viewed-share counts exist exactly for friend pairs and never exceed the
  // sharer's own share total.
  for (int viewer = 0; viewer < N; ++viewer) {
    CHECK(world.history.viewed_from[viewer].size() ==
          static_cast<std::size_t>(world.social.degree(viewer)));
    for (const auto& [sharer, count] : world.history.viewed_from[viewer]) {
      CHECK(world.social.are_friends(viewer, sharer));
      CHECK(count >= 0);
      CHECK(count <= world.history.total_shares(sharer));
    }
  }

  for (int v = 0; v < config.video_count; ++v) {
    CHECK(world.catalog.owner[v] < config.sps_count);
    CHECK(world.catalog.category[v] < config.category_count);
    CHECK(world.history.sharer_of[v] < N);
  }
}

TEST_CASE("world snapshots round-trip through JSON") {
  const auto world = generate_world(small_config(), 23);
  const auto text = world_to_json(world);
  CHECK(world_from_json(text) == world);
}
