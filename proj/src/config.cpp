#include "edgecache/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace edgecache {

namespace {

using nlohmann::json;

PopularityMode popularity_mode_from(const std::string& s) {
  if (s == "social") return PopularityMode::social;
  if (s == "zipf") return PopularityMode::zipf;
  throw ConfigError("popularity_mode must be \"social\" or \"zipf\", got \"" + s + "\"");
}

RequestMode request_mode_from(const std::string& s) {
  if (s == "popularity_weighted") return RequestMode::popularity_weighted;
  if (s == "strict_uniform") return RequestMode::strict_uniform;
  throw ConfigError("request_mode must be \"popularity_weighted\" or \"strict_uniform\", got \"" +
                    s + "\"");
}

Connectivity connectivity_from(const std::string& s) {
  if (s == "complete") return Connectivity::complete;
  if (s == "random") return Connectivity::random;
  throw ConfigError("connectivity must be \"complete\" or \"random\", got \"" + s + "\"");
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

std::string to_string(PopularityMode mode) {
  return mode == PopularityMode::social ? "social" : "zipf";
}

std::string to_string(RequestMode mode) {
  return mode == RequestMode::popularity_weighted ? "popularity_weighted" : "strict_uniform";
}

std::string to_string(Connectivity connectivity) {
  return connectivity == Connectivity::complete ? "complete" : "random";
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(sps_count >= 1, "sps_count must be >= 1");
  require(sbs_count >= 1, "sbs_count must be >= 1");
  require(ue_count >= 1, "ue_count must be >= 1");
  require(video_count >= 1, "video_count must be >= 1");
  require(category_count >= 1, "category_count must be >= 1");
  require(backhaul_total_mbit > 0, "backhaul_total_mbit must be > 0");
  require(radio_total_mbit > 0, "radio_total_mbit must be > 0");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0,1]");
  require(zipf_exponent > 0.0, "zipf_exponent must be > 0");
  require(video_size_mbit > 0.0, "video_size_mbit must be > 0");
  require(!beta_list.empty(), "beta_list must be non-empty");
  for (double beta : beta_list) {
    require(beta > 0.0 && beta <= 1.0, "beta values must lie in (0,1]");
  }
  require(!request_sweep.empty(), "request_sweep must be non-empty");
  for (int count : request_sweep) {
    require(count >= 0, "request_sweep entries must be >= 0");
  }
  require(!seeds.empty(), "seeds must be non-empty");
  require(connection_probability >= 0.0 && connection_probability <= 1.0,
          "connection_probability must lie in [0,1]");
  require(friendship_probability >= 0.0 && friendship_probability <= 1.0,
          "friendship_probability must lie in [0,1]");
  require(affinity_exponent > 0.0, "affinity_exponent must be > 0");
  require(max_shares_per_user >= 0, "max_shares_per_user must be >= 0");
  require(max_views_per_user >= 0, "max_views_per_user must be >= 0");
  require(video_quota_cap >= 0, "video_quota_cap must be >= 0");
  require(threads >= 0, "threads must be >= 0");
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  static const std::set<std::string> known{
      "sps_count",        "sbs_count",
      "ue_count",         "video_count",
      "category_count",   "backhaul_total_mbit",
      "radio_total_mbit", "gamma",
      "zipf_exponent",    "video_size_mbit",
      "beta_list",        "request_sweep",
      "seeds",            "popularity_mode",
      "request_mode",     "connectivity",
      "connection_probability", "friendship_probability",
      "affinity_exponent", "max_shares_per_user",
      "max_views_per_user", "video_quota_cap",
      "threads"};
  for (const auto& item : j.items()) {
    if (known.count(item.key()) == 0) {
      throw ConfigError("unknown config key \"" + item.key() + "\"");
    }
  }

  ScenarioConfig config;
  read_field(j, "sps_count", config.sps_count);
  read_field(j, "sbs_count", config.sbs_count);
  read_field(j, "ue_count", config.ue_count);
  read_field(j, "video_count", config.video_count);
  read_field(j, "category_count", config.category_count);
  read_field(j, "backhaul_total_mbit", config.backhaul_total_mbit);
  read_field(j, "radio_total_mbit", config.radio_total_mbit);
  read_field(j, "gamma", config.gamma);
  read_field(j, "zipf_exponent", config.zipf_exponent);
  read_field(j, "video_size_mbit", config.video_size_mbit);
  read_field(j, "beta_list", config.beta_list);
  read_field(j, "request_sweep", config.request_sweep);
  read_field(j, "seeds", config.seeds);
  if (j.contains("popularity_mode")) {
    config.popularity_mode = popularity_mode_from(j.at("popularity_mode").get<std::string>());
  }
  if (j.contains("request_mode")) {
    config.request_mode = request_mode_from(j.at("request_mode").get<std::string>());
  }
  if (j.contains("connectivity")) {
    config.connectivity = connectivity_from(j.at("connectivity").get<std::string>());
  }
  read_field(j, "connection_probability", config.connection_probability);
  read_field(j, "friendship_probability", config.friendship_probability);
  read_field(j, "affinity_exponent", config.affinity_exponent);
  read_field(j, "max_shares_per_user", config.max_shares_per_user);
  read_field(j, "max_views_per_user", config.max_views_per_user);
  read_field(j, "video_quota_cap", config.video_quota_cap);
  read_field(j, "threads", config.threads);
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ScenarioConfig& config) {
  json j{{"sps_count", config.sps_count},
         {"sbs_count", config.sbs_count},
         {"ue_count", config.ue_count},
         {"video_count", config.video_count},
         {"category_count", config.category_count},
         {"backhaul_total_mbit", config.backhaul_total_mbit},
         {"radio_total_mbit", config.radio_total_mbit},
         {"gamma", config.gamma},
         {"zipf_exponent", config.zipf_exponent},
         {"video_size_mbit", config.video_size_mbit},
         {"beta_list", config.beta_list},
         {"request_sweep", config.request_sweep},
         {"seeds", config.seeds},
         {"popularity_mode", to_string(config.popularity_mode)},
         {"request_mode", to_string(config.request_mode)},
         {"connectivity", to_string(config.connectivity)},
         {"connection_probability", config.connection_probability},
         {"friendship_probability", config.friendship_probability},
         {"affinity_exponent", config.affinity_exponent},
         {"max_shares_per_user", config.max_shares_per_user},
         {"max_views_per_user", config.max_views_per_user},
         {"video_quota_cap", config.video_quota_cap},
         {"threads", config.threads}};
  return j.dump(2) + "\n";
}

}  // namespace edgecache
