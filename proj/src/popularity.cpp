#include "edgecache/popularity.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "edgecache/rng.hpp"

namespace edgecache {

namespace {
constexpr std::uint64_t kZipfStream = 0x03;
}

void LocalPopularityTable::write_csv(std::ostream& os) const {
  char buffer[64];
  for (int m = 0; m < sbs_count_; ++m) {
    for (int v = 0; v < video_count_; ++v) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", at(m, v));
      if (v > 0) os << ',';
      os << buffer;
    }
    os << '\n';
  }
}

double i_social(const SocialGraph& social, const UserHistory& history, int viewer, int sharer) {
  if (!social.are_friends(viewer, sharer)) {
    throw std::invalid_argument("i_social requires a friend pair");
  }
  double watched_total = 0.0;
  for (int friend_id : social.friends[viewer]) {
    watched_total += history.alpha(viewer, friend_id);
  }
  if (watched_total <= 0.0) return 0.0;
  return history.alpha(viewer, sharer) / watched_total;
}

double i_sharing(const SocialGraph& social, const UserHistory& history, const Topology& topology,
                 int user, int category, int sbs) {
  int friends_on_sbs = 0;
  for (int friend_id : social.friends[user]) {
    if (topology.attachment[friend_id] == sbs) ++friends_on_sbs;
  }
  if (friends_on_sbs == 0) return 0.0;
  const int total = history.total_shares(user);
  if (total == 0) return 0.0;
  return friends_on_sbs * static_cast<double>(history.shares_by_category[user][category]) / total;
}

double i_interests(const UserHistory& history, int user, int category) {
  const int total = history.total_views(user);
  if (total == 0) return 0.0;
  return static_cast<double>(history.views_by_category[user][category]) / total;
}

double local_popularity(const World& world, double gamma, int sbs, int video) {
  const int sharer = world.history.sharer_of[video];
  const int category = world.catalog.category[video];
  double total = 0.0;
  for (int friend_id : world.social.friends[sharer]) {
    if (world.topology.attachment[friend_id] != sbs) continue;
    const double interaction = i_social(world.social, world.history, friend_id, sharer);
    const double interest = i_interests(world.history, friend_id, category);
    const double impact =
        i_sharing(world.social, world.history, world.topology, friend_id, category, sbs);
    total += impact * (gamma * interaction + (1.0 - gamma) * interest);
  }
  return total;
}

LocalPopularityTable social_popularity_table(const World& world, double gamma) {
  LocalPopularityTable table(world.topology.sbs_count, world.catalog.video_count);
  for (int v = 0; v < world.catalog.video_count; ++v) {
    // Only stations hosting friends of the sharer can score this video.
    const int sharer = world.history.sharer_of[v];
    for (int friend_id : world.social.friends[sharer]) {
      const int sbs = world.topology.attachment[friend_id];
      if (table.at(sbs, v) == 0.0) {
        table.at(sbs, v) = local_popularity(world, gamma, sbs, v);
      }
    }
  }
  return table;
}

LocalPopularityTable zipf_popularity_table(int sbs_count, int video_count, double exponent,
                                           std::uint64_t seed) {
  if (exponent <= 0.0) throw std::invalid_argument("zipf exponent must be > 0");
  std::vector<double> weights(video_count);
  double total = 0.0;
  for (int r = 0; r < video_count; ++r) {
    weights[r] = std::pow(static_cast<double>(r + 1), -exponent);
    total += weights[r];
  }
  for (double& w : weights) w /= total;

  rng::Engine eng(rng::derive_seed(seed, kZipfStream));
  LocalPopularityTable table(sbs_count, video_count);
  std::vector<int> perm(video_count);
  for (int m = 0; m < sbs_count; ++m) {
    for (int v = 0; v < video_count; ++v) perm[v] = v;
    rng::shuffle(eng, perm);
    for (int r = 0; r < video_count; ++r) table.at(m, perm[r]) = weights[r];
  }
  return table;
}

LocalPopularityTable build_popularity(const World& world, const ScenarioConfig& config,
                                      std::uint64_t seed) {
  if (config.popularity_mode == PopularityMode::zipf) {
    return zipf_popularity_table(world.topology.sbs_count, world.catalog.video_count,
                                 config.zipf_exponent, seed);
  }
  return social_popularity_table(world, config.gamma);
}

}  // namespace edgecache
