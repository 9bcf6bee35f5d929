// Preference construction for both sides of the caching game: stations rank
// videos by local popularity, each video ranks stations by the expected
// download time of serving its predicted requesters there.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgecache/config.hpp"
#include "edgecache/matching.hpp"
#include "edgecache/network.hpp"
#include "edgecache/popularity.hpp"

namespace edgecache {

// Predicted requesters of each video at each SBS, with the mean radio
// capacity over that set. A zero count means the station is not a candidate
// cache location for the video.
struct ExpectedDemand {
  int sbs_count{0};
  int video_count{0};
  std::vector<int> requester_count;
  std::vector<double> mean_radio;

  int count(int sbs, int video) const {
    return requester_count[static_cast<std::size_t>(sbs) * video_count + video];
  }
  double radio(int sbs, int video) const {
    return mean_radio[static_cast<std::size_t>(sbs) * video_count + video];
  }
};

// Social mode: the sharer's friends attached to the station whose blended
// interaction/interest score is positive. Zipf mode: every attached user,
// demand present wherever the popularity entry is positive.
ExpectedDemand expected_demand(const World& world, const LocalPopularityTable& popularity,
                               PopularityMode mode, double gamma);

// Video size over the slowest stage of the path: the backhaul link from the
// owner, or the mean radio capacity over the expected requesters. nullopt when
// the station is unreachable from the owner or predicts no requesters, in
// which case it is left out of the video's ranking.
std::optional<double> download_time(const Topology& topology, const Catalog& catalog,
                                    const ExpectedDemand& demand, int sps, int sbs, int video);

struct PreferenceProfile {
  std::vector<matching::PreferenceOrder> video_prefs;  // proposers
  std::vector<matching::PreferenceOrder> sbs_prefs;    // receivers

  bool operator==(const PreferenceProfile&) const = default;
};

// Station rankings: descending popularity, zero-score videos kept at the tail
// so storage can still be filled; ties break on the lower video index. Video
// rankings: ascending download time over reachable stations with demand; ties
// break on the lower station index. Video quota = number of ranked stations,
// optionally capped (cap 0 = uncapped). Stations with zero storage rank
// nothing.
PreferenceProfile build_preference_profile(const World& world,
                                           const LocalPopularityTable& popularity,
                                           const ExpectedDemand& demand, int video_quota_cap);

std::string profile_to_json(const PreferenceProfile& profile);

}  // namespace edgecache
