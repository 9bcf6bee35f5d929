// Local popularity of each video at each edge station: the social model
// (interaction, sharing impact, interest factors) and the synthetic
// per-station Zipf alternative.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "edgecache/config.hpp"
#include "edgecache/network.hpp"

namespace edgecache {

class LocalPopularityTable {
 public:
  LocalPopularityTable() = default;
  LocalPopularityTable(int sbs_count, int video_count)
      : sbs_count_(sbs_count), video_count_(video_count),
        values_(static_cast<std::size_t>(sbs_count) * video_count, 0.0) {}

  int sbs_count() const { return sbs_count_; }
  int video_count() const { return video_count_; }
  double at(int sbs, int video) const {
    return values_[static_cast<std::size_t>(sbs) * video_count_ + video];
  }
  double& at(int sbs, int video) {
    return values_[static_cast<std::size_t>(sbs) * video_count_ + video];
  }
  std::span<const double> row(int sbs) const {
    return {values_.data() + static_cast<std::size_t>(sbs) * video_count_,
            static_cast<std::size_t>(video_count_)};
  }

  // One row per SBS, one comma-separated column per video.
  void write_csv(std::ostream& os) const;

  bool operator==(const LocalPopularityTable&) const = default;

 private:
  int sbs_count_{0};
  int video_count_{0};
  std::vector<double> values_;
};

// Fraction of the viewer's watched-share history owed to this sharer.
// Zero when the viewer has watched nothing; throws std::invalid_argument
// for non-friend pairs.
double i_social(const SocialGraph& social, const UserHistory& history, int viewer, int sharer);

// Friends of `user` attached to `sbs`, weighted by the user's share of
// activity in `category`. Zero when the user never shared.
double i_sharing(const SocialGraph& social, const UserHistory& history, const Topology& topology,
                 int user, int category, int sbs);

// Fraction of the user's viewing history in `category`; zero when empty.
double i_interests(const UserHistory& history, int user, int category);

// Predicted demand for `video` at `sbs`: sum over the sharer's friends
// attached there of sharing impact times the gamma-blend of interaction and
// interest factors.
double local_popularity(const World& world, double gamma, int sbs, int video);

LocalPopularityTable social_popularity_table(const World& world, double gamma);

// Per SBS: normalized rank^(-exponent) weights assigned to a seeded random
// permutation of the catalog, so stations disagree about which videos lead.
LocalPopularityTable zipf_popularity_table(int sbs_count, int video_count, double exponent,
                                           std::uint64_t seed);

LocalPopularityTable build_popularity(const World& world, const ScenarioConfig& config,
                                      std::uint64_t seed);

}  // namespace edgecache
