// Scenario configuration: every knob of the generated world, the popularity
// model and the experiment sweep, with strict JSON parsing (unknown keys are
// errors) and defaults matching the reference evaluation scale.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgecache {

enum class PopularityMode { social, zipf };
enum class RequestMode { popularity_weighted, strict_uniform };
enum class Connectivity { complete, random };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  int sps_count{80};
  int sbs_count{150};
  int ue_count{400};
  int video_count{100};
  int category_count{6};
  double backhaul_total_mbit{80.0};  // network-wide backhaul budget per time slot
  double radio_total_mbit{180.0};    // network-wide radio budget per time slot
  double gamma{0.5};                 // social-interaction vs interest weight
  double zipf_exponent{1.0};
  double video_size_mbit{1.0};
  std::vector<double> beta_list{0.25, 0.75, 1.0};
  std::vector<int> request_sweep{50, 329, 607, 886, 1164, 1443, 1721, 2000};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  PopularityMode popularity_mode{PopularityMode::zipf};
  RequestMode request_mode{RequestMode::popularity_weighted};
  Connectivity connectivity{Connectivity::complete};
  double connection_probability{1.0};  // used when connectivity == random
  double friendship_probability{0.05};
  double affinity_exponent{1.0};  // category-affinity skew for the social world
  int max_shares_per_user{20};
  int max_views_per_user{40};
  int video_quota_cap{0};  // max replicas per video; 0 = every SBS with demand
  int threads{0};          // replicate workers; 0 = hardware concurrency

  // Throws ConfigError with the offending field named.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

// Strict parse: unknown keys, type mismatches and invalid values all throw
// ConfigError. Missing keys take their defaults.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

std::string to_string(PopularityMode mode);
std::string to_string(RequestMode mode);
std::string to_string(Connectivity connectivity);

}  // namespace edgecache
