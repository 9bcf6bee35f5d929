#include "edgecache/network.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "edgecache/rng.hpp"
#include "json.hpp"

namespace edgecache {

namespace {

constexpr std::uint64_t kTopologyStream = 0x01;
constexpr std::uint64_t kSocialStream = 0x02;

// Normalized cumulative rank^(-exponent) weights over `count` entries.
std::vector<double> zipf_cdf(int count, double exponent) {
  std::vector<double> cdf(count);
  double total = 0.0;
  for (int r = 0; r < count; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cdf[r] = total;
  }
  return cdf;
}

}  // namespace

double Topology::radio_capacity(int sbs, int ue) const {
  assert(attachment[ue] == sbs);
  (void)sbs;
  return ue_radio[ue];
}

bool SocialGraph::are_friends(int a, int b) const {
  const auto& adj = friends[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

int UserHistory::alpha(int viewer, int sharer) const {
  const auto& row = viewed_from[viewer];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(sharer, 0));
  if (it != row.end() && it->first == sharer) return it->second;
  return 0;
}

int UserHistory::total_shares(int user) const {
  int total = 0;
  for (int c : shares_by_category[user]) total += c;
  return total;
}

int UserHistory::total_views(int user) const {
  int total = 0;
  for (int c : views_by_category[user]) total += c;
  return total;
}

Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed) {
  rng::Engine eng(rng::derive_seed(seed, kTopologyStream));
  const int K = config.sps_count;
  const int M = config.sbs_count;
  const int N = config.ue_count;

  Topology topo;
  topo.sps_count = K;
  topo.sbs_count = M;
  topo.ue_count = N;

  topo.attachment.resize(N);
  topo.attached_ues.assign(M, {});
  for (int u = 0; u < N; ++u) {
    topo.attachment[u] = rng::uniform_int(eng, 0, M - 1);
    topo.attached_ues[topo.attachment[u]].push_back(u);
  }

  std::vector<char> link(static_cast<std::size_t>(K) * M, 0);
  if (config.connectivity == Connectivity::complete) {
    std::fill(link.begin(), link.end(), 1);
  } else {
    for (int i = 0; i < K; ++i) {
      for (int j = 0; j < M; ++j) {
        link[static_cast<std::size_t>(i) * M + j] =
            rng::bernoulli(eng, config.connection_probability) ? 1 : 0;
      }
    }
  }

  std::vector<int> sps_degree(M, 0);
  for (int j = 0; j < M; ++j) {
    for (int i = 0; i < K; ++i) sps_degree[j] += link[static_cast<std::size_t>(i) * M + j];
    if (sps_degree[j] == 0) {
      throw std::invalid_argument("SBS " + std::to_string(j) +
                                  " has no connected SPS under this connectivity config");
    }
  }

  const double backhaul_budget = config.backhaul_total_mbit / M;  // per SBS
  topo.backhaul.assign(static_cast<std::size_t>(K) * M, 0.0);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < M; ++j) {
      if (link[static_cast<std::size_t>(i) * M + j]) {
        topo.backhaul[static_cast<std::size_t>(i) * M + j] = backhaul_budget / sps_degree[j];
      }
    }
  }

  const double radio_budget = config.radio_total_mbit / M;  // per SBS
  topo.ue_radio.resize(N);
  for (int u = 0; u < N; ++u) {
    topo.ue_radio[u] = radio_budget / static_cast<double>(topo.attached_ues[topo.attachment[u]].size());
  }

  topo.storage_quota.assign(M, config.video_count);
  return topo;
}

void generate_social_world(const ScenarioConfig& config, const Topology& topology,
                           std::uint64_t seed, SocialGraph& social, UserHistory& history,
                           Catalog& catalog) {
  rng::Engine eng(rng::derive_seed(seed, kSocialStream));
  const int N = topology.ue_count;
  const int G = config.category_count;
  const int V = config.video_count;

  social.friends.assign(N, {});
  for (int a = 0; a < N; ++a) {
    for (int b = a + 1; b < N; ++b) {
      if (rng::bernoulli(eng, config.friendship_probability)) {
        social.friends[a].push_back(b);
        social.friends[b].push_back(a);
      }
    }
  }
  for (auto& adj : social.friends) std::sort(adj.begin(), adj.end());

  // Per-user category affinity: the Zipf mass lands on a user-specific
  // permutation of the categories.
  const auto base_cdf = zipf_cdf(G, config.affinity_exponent);
  std::vector<std::vector<double>> affinity_cdf(N);
  std::vector<int> perm(G);
  for (int u = 0; u < N; ++u) {
    for (int g = 0; g < G; ++g) perm[g] = g;
    rng::shuffle(eng, perm);
    std::vector<double> weights(G, 0.0);
    for (int r = 0; r < G; ++r) {
      const double w = base_cdf[r] - (r == 0 ? 0.0 : base_cdf[r - 1]);
      weights[perm[r]] = w;
    }
    auto& cdf = affinity_cdf[u];
    cdf.resize(G);
    double total = 0.0;
    for (int g = 0; g < G; ++g) {
      total += weights[g];
      cdf[g] = total;
    }
  }

  history.shares_by_category.assign(N, std::vector<int>(G, 0));
  history.views_by_category.assign(N, std::vector<int>(G, 0));
  for (int u = 0; u < N; ++u) {
    const int shares = rng::uniform_int(eng, 0, config.max_shares_per_user);
    for (int t = 0; t < shares; ++t) {
      ++history.shares_by_category[u][rng::sample_cdf(eng, affinity_cdf[u])];
    }
    const int views = rng::uniform_int(eng, 0, config.max_views_per_user);
    for (int t = 0; t < views; ++t) {
      ++history.views_by_category[u][rng::sample_cdf(eng, affinity_cdf[u])];
    }
  }

  // Viewed-share counts per friend pair, bounded by the sharer's own total.
  history.viewed_from.assign(N, {});
  for (int viewer = 0; viewer < N; ++viewer) {
    for (int sharer : social.friends[viewer]) {
      const int cap = history.total_shares(sharer);
      const int count = cap > 0 ? rng::uniform_int(eng, 0, cap) : 0;
      history.viewed_from[viewer].emplace_back(sharer, count);
    }
  }

  catalog.video_count = V;
  catalog.video_size_mbit = config.video_size_mbit;
  catalog.owner.resize(V);
  catalog.category.resize(V);
  history.sharer_of.resize(V);
  for (int v = 0; v < V; ++v) {
    catalog.owner[v] = rng::uniform_int(eng, 0, config.sps_count - 1);
    catalog.category[v] = rng::uniform_int(eng, 0, G - 1);
    history.sharer_of[v] = rng::uniform_int(eng, 0, N - 1);
  }
}

World generate_world(const ScenarioConfig& config, std::uint64_t seed) {
  World world;
  world.topology = generate_topology(config, seed);
  generate_social_world(config, world.topology, seed, world.social, world.history, world.catalog);
  return world;
}

namespace {

using nlohmann::json;

json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
  json arr = json::array();
  for (const auto& [a, b] : pairs) arr.push_back({a, b});
  return arr;
}

std::vector<std::pair<int, int>> pairs_from_json(const json& arr) {
  std::vector<std::pair<int, int>> out;
  for (const auto& item : arr) out.emplace_back(item.at(0).get<int>(), item.at(1).get<int>());
  return out;
}

}  // namespace

std::string world_to_json(const World& world) {
  const auto& t = world.topology;
  json jt{{"sps_count", t.sps_count},     {"sbs_count", t.sbs_count},
          {"ue_count", t.ue_count},       {"backhaul", t.backhaul},
          {"attachment", t.attachment},   {"ue_radio", t.ue_radio},
          {"storage_quota", t.storage_quota}};
  const auto& c = world.catalog;
  json jc{{"video_count", c.video_count},
          {"owner", c.owner},
          {"category", c.category},
          {"video_size_mbit", c.video_size_mbit}};
  json js{{"friends", world.social.friends}};
  const auto& h = world.history;
  json viewed = json::array();
  for (const auto& row : h.viewed_from) viewed.push_back(pairs_to_json(row));
  json jh{{"viewed_from", viewed},
          {"shares_by_category", h.shares_by_category},
          {"views_by_category", h.views_by_category},
          {"sharer_of", h.sharer_of}};
  json j{{"topology", jt}, {"catalog", jc}, {"social", js}, {"history", jh}};
  return j.dump();
}

World world_from_json(const std::string& text) {
  const json j = json::parse(text);
  World world;
  auto& t = world.topology;
  const auto& jt = j.at("topology");
  t.sps_count = jt.at("sps_count").get<int>();
  t.sbs_count = jt.at("sbs_count").get<int>();
  t.ue_count = jt.at("ue_count").get<int>();
  t.backhaul = jt.at("backhaul").get<std::vector<double>>();
  t.attachment = jt.at("attachment").get<std::vector<int>>();
  t.ue_radio = jt.at("ue_radio").get<std::vector<double>>();
  t.storage_quota = jt.at("storage_quota").get<std::vector<int>>();
  t.attached_ues.assign(t.sbs_count, {});
  for (int u = 0; u < t.ue_count; ++u) t.attached_ues[t.attachment[u]].push_back(u);

  auto& c = world.catalog;
  const auto& jc = j.at("catalog");
  c.video_count = jc.at("video_count").get<int>();
  c.owner = jc.at("owner").get<std::vector<int>>();
  c.category = jc.at("category").get<std::vector<int>>();
  c.video_size_mbit = jc.at("video_size_mbit").get<double>();

  world.social.friends = j.at("social").at("friends").get<std::vector<std::vector<int>>>();

  auto& h = world.history;
  const auto& jh = j.at("history");
  for (const auto& row : jh.at("viewed_from")) h.viewed_from.push_back(pairs_from_json(row));
  h.shares_by_category = jh.at("shares_by_category").get<std::vector<std::vector<int>>>();
  h.views_by_category = jh.at("views_by_category").get<std::vector<std::vector<int>>>();
  h.sharer_of = jh.at("sharer_of").get<std::vector<int>>();
  return world;
}

}  // namespace edgecache
