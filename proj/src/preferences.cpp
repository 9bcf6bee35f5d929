#include "edgecache/preferences.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace edgecache {

ExpectedDemand expected_demand(const World& world, const LocalPopularityTable& popularity,
                               PopularityMode mode, double gamma) {
  const int M = world.topology.sbs_count;
  const int V = world.catalog.video_count;
  ExpectedDemand demand;
  demand.sbs_count = M;
  demand.video_count = V;
  demand.requester_count.assign(static_cast<std::size_t>(M) * V, 0);
  demand.mean_radio.assign(static_cast<std::size_t>(M) * V, 0.0);

  if (mode == PopularityMode::zipf) {
    for (int j = 0; j < M; ++j) {
      const auto& ues = world.topology.attached_ues[j];
      if (ues.empty()) continue;
      double mean = 0.0;
      for (int u : ues) mean += world.topology.ue_radio[u];
      mean /= static_cast<double>(ues.size());
      for (int v = 0; v < V; ++v) {
        if (popularity.at(j, v) <= 0.0) continue;
        demand.requester_count[static_cast<std::size_t>(j) * V + v] =
            static_cast<int>(ues.size());
        demand.mean_radio[static_cast<std::size_t>(j) * V + v] = mean;
      }
    }
    return demand;
  }

  for (int v = 0; v < V; ++v) {
    const int sharer = world.history.sharer_of[v];
    const int category = world.catalog.category[v];
    for (int friend_id : world.social.friends[sharer]) {
      const double interest =
          gamma * i_social(world.social, world.history, friend_id, sharer) +
          (1.0 - gamma) * i_interests(world.history, friend_id, category);
      if (interest <= 0.0) continue;
      const int j = world.topology.attachment[friend_id];
      const auto idx = static_cast<std::size_t>(j) * V + v;
      demand.mean_radio[idx] += world.topology.ue_radio[friend_id];
      ++demand.requester_count[idx];
    }
  }
  for (std::size_t idx = 0; idx < demand.mean_radio.size(); ++idx) {
    if (demand.requester_count[idx] > 0) demand.mean_radio[idx] /= demand.requester_count[idx];
  }
  return demand;
}

std::optional<double> download_time(const Topology& topology, const Catalog& catalog,
                                    const ExpectedDemand& demand, int sps, int sbs, int video) {
  if (!topology.connected(sps, sbs)) return std::nullopt;
  if (demand.count(sbs, video) == 0) return std::nullopt;
  const double bottleneck =
      std::min(topology.backhaul_capacity(sps, sbs), demand.radio(sbs, video));
  return catalog.video_size_mbit / bottleneck;
}

PreferenceProfile build_preference_profile(const World& world,
                                           const LocalPopularityTable& popularity,
                                           const ExpectedDemand& demand, int video_quota_cap) {
  const int M = world.topology.sbs_count;
  const int V = world.catalog.video_count;
  PreferenceProfile profile;
  profile.sbs_prefs.resize(M);
  profile.video_prefs.resize(V);

  std::vector<int> order(V);
  for (int j = 0; j < M; ++j) {
    auto& pref = profile.sbs_prefs[j];
    pref.owner = j;
    const int quota = world.topology.storage_quota[j];
    if (quota <= 0) {
      pref.quota = 1;  // empty ranking: accepts nothing
      continue;
    }
    pref.quota = quota;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double pa = popularity.at(j, a);
      const double pb = popularity.at(j, b);
      if (pa != pb) return pa > pb;
      return a < b;
    });
    pref.ranking = order;
  }

  std::vector<std::pair<double, int>> ranked;  // (download time, sbs)
  for (int v = 0; v < V; ++v) {
    auto& pref = profile.video_prefs[v];
    pref.owner = v;
    const int owner_sps = world.catalog.owner[v];
    ranked.clear();
    for (int j = 0; j < M; ++j) {
      if (const auto t = download_time(world.topology, world.catalog, demand, owner_sps, j, v)) {
        ranked.emplace_back(*t, j);
      }
    }
    std::sort(ranked.begin(), ranked.end());
    pref.ranking.reserve(ranked.size());
    for (const auto& [t, j] : ranked) pref.ranking.push_back(j);
    int quota = static_cast<int>(pref.ranking.size());
    if (video_quota_cap > 0) quota = std::min(quota, video_quota_cap);
    pref.quota = std::max(quota, 1);
  }
  return profile;
}

std::string profile_to_json(const PreferenceProfile& profile) {
  nlohmann::json videos = nlohmann::json::array();
  for (const auto& p : profile.video_prefs) {
    videos.push_back({{"owner", p.owner}, {"quota", p.quota}, {"ranking", p.ranking}});
  }
  nlohmann::json stations = nlohmann::json::array();
  for (const auto& p : profile.sbs_prefs) {
    stations.push_back({{"owner", p.owner}, {"quota", p.quota}, {"ranking", p.ranking}});
  }
  return nlohmann::json{{"video_prefs", videos}, {"sbs_prefs", stations}}.dump();
}

}  // namespace edgecache
