// Physical and social topology: origin servers, edge stations, users, link
// capacities, the video catalog, the friendship graph and per-user sharing
// and viewing histories. Generators are fully seeded; the same seed rebuilds
// the identical world.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgecache/config.hpp"

namespace edgecache {

struct Topology {
  int sps_count{0};
  int sbs_count{0};
  int ue_count{0};
  std::vector<double> backhaul;     // sps*sbs matrix, 0 = not connected
  std::vector<int> attachment;      // UE -> serving SBS
  std::vector<double> ue_radio;     // radio capacity of the UE's serving link
  std::vector<int> storage_quota;   // per SBS, counted in videos
  std::vector<std::vector<int>> attached_ues;  // per SBS, ascending

  double backhaul_capacity(int sps, int sbs) const { return backhaul[sps * sbs_count + sbs]; }
  bool connected(int sps, int sbs) const { return backhaul_capacity(sps, sbs) > 0.0; }
  // Defined only for the serving pair.
  double radio_capacity(int sbs, int ue) const;

  bool operator==(const Topology&) const = default;
};

struct Catalog {
  int video_count{0};
  std::vector<int> owner;     // video -> SPS
  std::vector<int> category;  // video -> category in [0, G)
  double video_size_mbit{1.0};

  bool operator==(const Catalog&) const = default;
};

struct SocialGraph {
  std::vector<std::vector<int>> friends;  // sorted adjacency, symmetric, irreflexive

  int user_count() const { return static_cast<int>(friends.size()); }
  int degree(int user) const { return static_cast<int>(friends[user].size()); }
  bool are_friends(int a, int b) const;

  bool operator==(const SocialGraph&) const = default;
};

struct UserHistory {
  // viewer -> sorted (sharer, count): videos shared by the sharer that the
  // viewer watched. Present only for friend pairs.
  std::vector<std::vector<std::pair<int, int>>> viewed_from;
  std::vector<std::vector<int>> shares_by_category;  // [user][category]
  std::vector<std::vector<int>> views_by_category;   // [user][category]
  std::vector<int> sharer_of;                        // video -> UE

  int alpha(int viewer, int sharer) const;
  int total_shares(int user) const;
  int total_views(int user) const;

  bool operator==(const UserHistory&) const = default;
};

struct World {
  Topology topology;
  Catalog catalog;
  SocialGraph social;
  UserHistory history;

  bool operator==(const World&) const = default;
};

// Uniform user attachment; per-SBS backhaul budget B/M split equally over its
// connected SPSs and radio budget R/M split equally over its attached users.
// Throws std::invalid_argument when some SBS ends up with no connected SPS.
Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed);

// Erdos-Renyi friendships, Zipf-skewed per-user category affinities, share and
// view counts drawn against those affinities, and uniformly owned/categorized
// videos each pinned to a sharer.
void generate_social_world(const ScenarioConfig& config, const Topology& topology,
                           std::uint64_t seed, SocialGraph& social, UserHistory& history,
                           Catalog& catalog);

World generate_world(const ScenarioConfig& config, std::uint64_t seed);

// World snapshot as a JSON tree, for replay and cross-implementation diffing.
std::string world_to_json(const World& world);
World world_from_json(const std::string& text);

}  // namespace edgecache
