// Cache placement by stable matching or random filling, request generation,
// a congestion-aware serving model and the sweep experiment around them.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "edgecache/config.hpp"
#include "edgecache/network.hpp"
#include "edgecache/popularity.hpp"
#include "edgecache/preferences.hpp"

namespace edgecache {

struct Placement {
  std::vector<std::vector<int>> cached;  // per SBS, ascending video ids

  bool contains(int sbs, int video) const;
  int total_cached() const;

  bool operator==(const Placement&) const = default;
};

// Runs the deferred-acceptance game with videos proposing and converts the
// outcome to cache contents. The result is checked against the stability and
// trace verifiers before it is returned; a failure throws std::logic_error.
Placement place_matching(const World& world, const PreferenceProfile& profile);

// Fills each station with a uniform sample (without replacement) of the videos
// whose owners it can reach, up to its storage quota.
Placement place_random(const World& world, std::uint64_t seed);

struct Request {
  int ue{0};
  int video{0};

  bool operator==(const Request&) const = default;
};

using RequestTrace = std::vector<Request>;

// Requesting user is uniform. The requested video follows the serving
// station's popularity row (popularity_weighted) or is uniform over the
// catalog (strict_uniform). A station whose row carries no mass falls back to
// a uniform pick.
RequestTrace generate_requests(const World& world, const LocalPopularityTable& popularity,
                               int count, std::uint64_t seed, RequestMode mode);

struct ServeResult {
  double satisfaction{1.0};        // locally served fraction; 1 for an empty trace
  double mean_download_time{0.0};  // time slots, averaged over all requests
  int local_count{0};
  int remote_count{0};
  int unserved_count{0};  // remote requests whose owner cannot reach the station
};

// Locally cached videos travel only the requester's radio link; the rest come
// from the owner over backhaul, then radio. Every link's capacity is shared
// equally by the requests of this batch that traverse it, and each request is
// paced by its slowest traversed link. Unserved requests are billed the worst
// served time in the batch.
ServeResult serve_requests(const World& world, const Placement& placement,
                           const RequestTrace& trace);

struct ExperimentResult {
  double beta{0.0};
  int request_count{0};
  std::uint64_t seed{0};
  double sat_ma{0.0};
  double sat_ra{0.0};
  double time_ma{0.0};
  double time_ra{0.0};

  bool operator==(const ExperimentResult&) const = default;
};

// Full sweep: per (beta, seed) the world is built once, storage quotas are set
// to round(beta * V), both placements are computed, and every request count is
// served with the same trace under both. Replicates run on a worker pool; row
// order and values do not depend on the thread count.
std::vector<ExperimentResult> run_experiment(const ScenarioConfig& config);

// Schema: beta,requests,seed,sat_ma,sat_ra,time_ma,time_ra with floats at six
// significant digits.
void write_results_csv(std::ostream& os, const std::vector<ExperimentResult>& results);
std::vector<ExperimentResult> read_results_csv(std::istream& is);  // throws std::runtime_error

struct SweepPoint {
  double beta{0.0};
  int request_count{0};
  double sat_ma{0.0};
  double sat_ra{0.0};
  double time_ma{0.0};
  double time_ra{0.0};
  int replicates{0};
};

// Means over seeds, sorted by (beta, request count).
std::vector<SweepPoint> aggregate_over_seeds(const std::vector<ExperimentResult>& results);

}  // namespace edgecache
