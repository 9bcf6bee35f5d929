#include <algorithm>

#include "doctest.h"
#include "edgecache/preferences.hpp"

using namespace edgecache;

namespace {

// One SPS, two stations, three users: 0 and 1 on station 0, 2 on station 1.
World two_station_world() {
  World world;
  auto& t = world.topology;
  t.sps_count = 1;
  t.sbs_count = 2;
  t.ue_count = 3;
  t.backhaul = {2.0, 2.0};
  t.attachment = {0, 0, 1};
  t.ue_radio = {3.0, 5.0, 4.0};
  t.storage_quota = {2, 2};
  t.attached_ues = {{0, 1}, {2}};
  world.social.friends = {{2}, {}, {0}};
  world.history.viewed_from = {{{2, 1}}, {}, {{0, 0}}};
  world.history.shares_by_category = {{1}, {0}, {3}};
  world.history.views_by_category = {{2}, {0}, {1}};
  world.history.sharer_of = {2, 2};
  world.catalog.video_count = 2;
  world.catalog.owner = {0, 0};
  world.catalog.category = {0, 0};
  world.catalog.video_size_mbit = 1.0;
  return world;
}

ExpectedDemand uniform_demand(int sbs_count, int video_count, int count, double radio) {
  ExpectedDemand demand;
  demand.sbs_count = sbs_count;
  demand.video_count = video_count;
  demand.requester_count.assign(static_cast<std::size_t>(sbs_count) * video_count, count);
  demand.mean_radio.assign(static_cast<std::size_t>(sbs_count) * video_count, radio);
  return demand;
}

}  // namespace

TEST_CASE("download time is the size over the slowest stage") {
  Topology topo;
  topo.sps_count = 1;
  topo.sbs_count = 1;
  topo.ue_count = 1;
  topo.backhaul = {2.0};
  topo.attachment = {0};
  topo.ue_radio = {4.0};
  topo.storage_quota = {1};
  topo.attached_ues = {{0}};
  Catalog catalog;
  catalog.video_count = 1;
  catalog.owner = {0};
  catalog.category = {0};
  catalog.video_size_mbit = 1.0;

  SUBCASE("backhaul-bound link") {
    const auto demand = uniform_demand(1, 1, 1, 4.0);
    const auto t = download_time(topo, catalog, demand, 0, 0, 0);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("equal stages collapse to one rate") {
    topo.backhaul = {3.0};
    const auto demand = uniform_demand(1, 1, 1, 3.0);
    CHECK(*download_time(topo, catalog, demand, 0, 0, 0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("radio-bound link with the mean capacity of two requesters") {
    topo.backhaul = {10.0};
    const auto demand = uniform_demand(1, 1, 2, 4.0);  // mean of {3,5}
    CHECK(*download_time(topo, catalog, demand, 0, 0, 0) ==
          doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("no expected requesters leaves the station unranked") {
    const auto demand = uniform_demand(1, 1, 0, 0.0);
    CHECK(!download_time(topo, catalog, demand, 0, 0, 0).has_value());
  }
  SUBCASE("missing backhaul leaves the station unranked") {
    topo.backhaul = {0.0};
    const auto demand = uniform_demand(1, 1, 1, 4.0);
    CHECK(!download_time(topo, catalog, demand, 0, 0, 0).has_value());
  }
}

TEST_CASE("expected demand in social mode follows the sharer's local friends") {
  const auto world = two_station_world();
  LocalPopularityTable popularity(2, 2);
  const auto demand = expected_demand(world, popularity, PopularityMode::social, 0.5);

  // Both videos are shared by user 2 whose single friend (user 0, on station
  // 0) has positive interest; station 1 hosts no friends of the sharer.
  CHECK(demand.count(0, 0) == 1);
  CHECK(demand.radio(0, 0) == doctest::Approx(3.0));
  CHECK(demand.count(1, 0) == 0);

  SUBCASE("two predicted requesters average their radio capacities") {
    World wide = world;
    wide.social.friends = {{2}, {2}, {0, 1}};
    wide.history.viewed_from = {{{2, 1}}, {{2, 1}}, {{0, 0}, {1, 0}}};
    wide.history.views_by_category = {{2}, {1}, {1}};
    const auto d = expected_demand(wide, popularity, PopularityMode::social, 0.5);
    CHECK(d.count(0, 0) == 2);
    CHECK(d.radio(0, 0) == doctest::Approx(4.0).epsilon(1e-12));  // mean of {3,5}
  }
}

TEST_CASE("expected demand in zipf mode covers every attached user") {
  World world = two_station_world();
  world.topology.attachment = {0, 0, 0};
  world.topology.ue_radio = {4.0, 4.0, 4.0};
  world.topology.attached_ues = {{0, 1, 2}, {}};
  const auto popularity = zipf_popularity_table(2, 2, 1.0, 3);
  const auto demand = expected_demand(world, popularity, PopularityMode::zipf, 0.5);
  CHECK(demand.count(0, 0) == 3);
  CHECK(demand.radio(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(demand.count(1, 0) == 0);  // no attached users
}

TEST_CASE("station rankings sort by popularity with index tie-breaks") {
  World world = two_station_world();
  world.catalog.video_count = 3;
  world.catalog.owner = {0, 0, 0};
  world.catalog.category = {0, 0, 0};
  world.history.sharer_of = {2, 2, 2};
  LocalPopularityTable popularity(2, 3);
  popularity.at(0, 0) = 0.5;
  popularity.at(0, 1) = 0.9;
  popularity.at(0, 2) = 0.5;
  const auto demand = uniform_demand(2, 3, 1, 4.0);
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  CHECK(profile.sbs_prefs[0].ranking == std::vector<int>{1, 0, 2});
  CHECK(profile.sbs_prefs[0].quota == 2);
}

TEST_CASE("zero-popularity videos stay ranked at the tail") {
  World world = two_station_world();
  world.catalog.video_count = 3;
  world.catalog.owner = {0, 0, 0};
  world.history.sharer_of = {2, 2, 2};
  world.catalog.category = {0, 0, 0};
  LocalPopularityTable popularity(2, 3);
  popularity.at(0, 1) = 0.3;
  const auto demand = uniform_demand(2, 3, 1, 4.0);
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  CHECK(profile.sbs_prefs[0].ranking == std::vector<int>{1, 0, 2});
}

TEST_CASE("video rankings sort by download time with index tie-breaks") {
  World world = two_station_world();
  // Station 1 twice as fast on backhaul: smaller download time, ranked first.
  world.topology.backhaul = {2.0, 4.0};
  const auto demand = uniform_demand(2, 2, 1, 8.0);
  LocalPopularityTable popularity(2, 2);
  popularity.at(0, 0) = popularity.at(1, 0) = 0.5;
  popularity.at(0, 1) = popularity.at(1, 1) = 0.5;
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  CHECK(profile.video_prefs[0].ranking == std::vector<int>{1, 0});
  CHECK(profile.video_prefs[0].quota == 2);

  SUBCASE("quota cap binds") {
    const auto capped = build_preference_profile(world, popularity, demand, 1);
    CHECK(capped.video_prefs[0].quota == 1);
  }
  SUBCASE("a video unranked everywhere keeps quota one and an empty ranking") {
    const auto empty_demand = uniform_demand(2, 2, 0, 0.0);
    const auto none = build_preference_profile(world, popularity, empty_demand, 0);
    CHECK(none.video_prefs[0].ranking.empty());
    CHECK(none.video_prefs[0].quota == 1);
  }
}

TEST_CASE("single station and video yield singleton rankings") {
  World world = two_station_world();
  world.topology.sbs_count = 1;
  world.topology.backhaul = {2.0};
  world.topology.attachment = {0, 0, 0};
  world.topology.attached_ues = {{0, 1, 2}};
  world.topology.storage_quota = {1};
  world.catalog.video_count = 1;
  world.catalog.owner = {0};
  world.catalog.category = {0};
  world.history.sharer_of = {2};
  LocalPopularityTable popularity(1, 1);
  popularity.at(0, 0) = 1.0;
  const auto demand = uniform_demand(1, 1, 1, 4.0);
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  CHECK(profile.sbs_prefs[0].ranking == std::vector<int>{0});
  CHECK(profile.video_prefs[0].ranking == std::vector<int>{0});
}

TEST_CASE("stations with zero storage rank nothing") {
  World world = two_station_world();
  world.topology.storage_quota = {0, 2};
  LocalPopularityTable popularity(2, 2);
  popularity.at(0, 0) = 0.5;
  const auto demand = uniform_demand(2, 2, 1, 4.0);
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  CHECK(profile.sbs_prefs[0].ranking.empty());
  CHECK(profile.sbs_prefs[0].quota == 1);
  CHECK(profile.sbs_prefs[1].ranking.size() == 2);
}

TEST_CASE("rankings are invariant under positive scaling of a popularity row") {
  World world = two_station_world();
  LocalPopularityTable popularity(2, 2);
  popularity.at(0, 0) = 0.2;
  popularity.at(0, 1) = 0.7;
  LocalPopularityTable scaled = popularity;
  scaled.at(0, 0) *= 13.0;
  scaled.at(0, 1) *= 13.0;
  const auto demand = uniform_demand(2, 2, 1, 4.0);
  CHECK(build_preference_profile(world, popularity, demand, 0).sbs_prefs[0].ranking ==
        build_preference_profile(world, scaled, demand, 0).sbs_prefs[0].ranking);
}

TEST_CASE("built profiles validate as a matching input and rebuild identically") {
  ScenarioConfig config;
  config.sps_count = 3;
  config.sbs_count = 5;
  config.ue_count = 15;
  config.video_count = 8;
  config.category_count = 3;
  config.popularity_mode = PopularityMode::social;
  config.friendship_probability = 0.3;
  const auto world = generate_world(config, 41);
  const auto popularity = build_popularity(world, config, 41);
  const auto demand = expected_demand(world, popularity, config.popularity_mode, config.gamma);
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  CHECK_NOTHROW(matching::validate_preference_profile(profile.video_prefs, profile.sbs_prefs));
  CHECK(build_preference_profile(world, popularity, demand, 0) == profile);
}

TEST_CASE("profile JSON export carries both sides") {
  World world = two_station_world();
  LocalPopularityTable popularity(2, 2);
  popularity.at(0, 0) = 0.4;
  const auto demand = uniform_demand(2, 2, 1, 4.0);
  const auto profile = build_preference_profile(world, popularity, demand, 0);
  const auto text = profile_to_json(profile);
  CHECK(text.find("\"video_prefs\"") != std::string::npos);
  CHECK(text.find("\"sbs_prefs\"") != std::string::npos);
  CHECK(text.find("\"ranking\"") != std::string::npos);
}

TEST_CASE("raising a backhaul capacity never demotes the station in a video ranking") {
  World world = two_station_world();
  world.topology.backhaul = {2.0, 2.0};
  const auto demand = uniform_demand(2, 2, 1, 8.0);
  LocalPopularityTable popularity(2, 2);
  const auto before = build_preference_profile(world, popularity, demand, 0);
  world.topology.backhaul = {2.0, 6.0};
  const auto after = build_preference_profile(world, popularity, demand, 0);
  for (int v = 0; v < 2; ++v) {
    const auto& b = before.video_prefs[v].ranking;
    const auto& a = after.video_prefs[v].ranking;
    const auto pos_before = std::find(b.begin(), b.end(), 1) - b.begin();
    const auto pos_after = std::find(a.begin(), a.end(), 1) - a.begin();
    CHECK(pos_after <= pos_before);
  }
}
