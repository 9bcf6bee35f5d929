#include "edgecache/cache_sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "edgecache/rng.hpp"

namespace edgecache {

namespace {

constexpr std::uint64_t kRandomPlacementStream = 0x04;
constexpr std::uint64_t kRequestStream = 0x05;

void parallel_for(int task_count, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, task_count));
  if (threads == 1) {
    for (int t = 0; t < task_count; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= task_count || failed.load()) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

bool Placement::contains(int sbs, int video) const {
  const auto& row = cached[sbs];
  return std::binary_search(row.begin(), row.end(), video);
}

int Placement::total_cached() const {
  int total = 0;
  for (const auto& row : cached) total += static_cast<int>(row.size());
  return total;
}

Placement place_matching(const World& world, const PreferenceProfile& profile) {
  const auto result = matching::run_deferred_acceptance(profile.video_prefs, profile.sbs_prefs);
  if (const auto violation =
          matching::matching_invariant_violation(result.matching, profile.video_prefs,
                                                 profile.sbs_prefs)) {
    throw std::logic_error("matching placement broke an invariant: " + *violation);
  }
  if (const auto blocking =
          matching::find_blocking_pair(result.matching, profile.video_prefs, profile.sbs_prefs)) {
    throw std::logic_error("matching placement is unstable at pair (" +
                           std::to_string(blocking->proposer) + "," +
                           std::to_string(blocking->receiver) + ")");
  }
  if (!matching::trace_propositions_hold(result.trace, profile.video_prefs, profile.sbs_prefs)) {
    throw std::logic_error("matching placement trace violates the round monotonicity properties");
  }

  Placement placement;
  placement.cached.resize(world.topology.sbs_count);
  for (int j = 0; j < world.topology.sbs_count; ++j) {
    placement.cached[j] = result.matching.receiver_partners(j);
  }
  return placement;
}

Placement place_random(const World& world, std::uint64_t seed) {
  rng::Engine eng(rng::derive_seed(seed, kRandomPlacementStream));
  const int M = world.topology.sbs_count;
  const int V = world.catalog.video_count;
  Placement placement;
  placement.cached.resize(M);
  std::vector<int> reachable;
  for (int j = 0; j < M; ++j) {
    reachable.clear();
    for (int v = 0; v < V; ++v) {
      if (world.topology.connected(world.catalog.owner[v], j)) reachable.push_back(v);
    }
    const int take = std::min<int>(world.topology.storage_quota[j],
                                   static_cast<int>(reachable.size()));
    if (take <= 0) continue;
    auto picks = rng::sample_without_replacement(eng, static_cast<int>(reachable.size()), take);
    auto& row = placement.cached[j];
    row.reserve(take);
    for (int p : picks) row.push_back(reachable[p]);
    std::sort(row.begin(), row.end());
  }
  return placement;
}

RequestTrace generate_requests(const World& world, const LocalPopularityTable& popularity,
                               int count, std::uint64_t seed, RequestMode mode) {
  if (count < 0) throw std::invalid_argument("request count must be >= 0");
  rng::Engine eng(rng::derive_seed(seed, kRequestStream));
  const int N = world.topology.ue_count;
  const int V = world.catalog.video_count;

  std::vector<std::vector<double>> row_cdf;
  if (mode == RequestMode::popularity_weighted) {
    row_cdf.resize(world.topology.sbs_count);
    for (int j = 0; j < world.topology.sbs_count; ++j) {
      auto& cdf = row_cdf[j];
      cdf.resize(V);
      double total = 0.0;
      for (int v = 0; v < V; ++v) {
        total += popularity.at(j, v);
        cdf[v] = total;
      }
    }
  }

  RequestTrace trace;
  trace.reserve(count);
  for (int t = 0; t < count; ++t) {
    Request req;
    req.ue = rng::uniform_int(eng, 0, N - 1);
    if (mode == RequestMode::popularity_weighted) {
      const auto& cdf = row_cdf[world.topology.attachment[req.ue]];
      if (cdf.back() > 0.0) {
        req.video = rng::sample_cdf(eng, cdf);
      } else {
        req.video = rng::uniform_int(eng, 0, V - 1);  // station with no scored video
      }
    } else {
      req.video = rng::uniform_int(eng, 0, V - 1);
    }
    trace.push_back(req);
  }
  return trace;
}

ServeResult serve_requests(const World& world, const Placement& placement,
                           const RequestTrace& trace) {
  ServeResult result;
  if (trace.empty()) return result;

  const int M = world.topology.sbs_count;
  enum class Route { local, remote, unserved };
  std::vector<Route> route(trace.size());
  std::vector<int> radio_load(world.topology.ue_count, 0);
  std::vector<int> backhaul_load(static_cast<std::size_t>(world.topology.sps_count) * M, 0);

  for (std::size_t r = 0; r < trace.size(); ++r) {
    const auto& req = trace[r];
    const int sbs = world.topology.attachment[req.ue];
    if (placement.contains(sbs, req.video)) {
      route[r] = Route::local;
      ++radio_load[req.ue];
      ++result.local_count;
    } else if (world.topology.connected(world.catalog.owner[req.video], sbs)) {
      route[r] = Route::remote;
      ++radio_load[req.ue];
      ++backhaul_load[static_cast<std::size_t>(world.catalog.owner[req.video]) * M + sbs];
      ++result.remote_count;
    } else {
      route[r] = Route::unserved;
      ++result.unserved_count;
    }
  }

  const double size = world.catalog.video_size_mbit;
  double total_time = 0.0;
  double worst_served = 0.0;
  for (std::size_t r = 0; r < trace.size(); ++r) {
    if (route[r] == Route::unserved) continue;
    const auto& req = trace[r];
    const int sbs = world.topology.attachment[req.ue];
    double time = size * radio_load[req.ue] / world.topology.ue_radio[req.ue];
    if (route[r] == Route::remote) {
      const int owner = world.catalog.owner[req.video];
      const double backhaul_time =
          size * backhaul_load[static_cast<std::size_t>(owner) * M + sbs] /
          world.topology.backhaul_capacity(owner, sbs);
      time = std::max(time, backhaul_time);
    }
    total_time += time;
    worst_served = std::max(worst_served, time);
  }
  if (result.unserved_count > 0) {
    // Only possible under partial connectivity; billed at the batch worst case.
    const double penalty = result.local_count + result.remote_count > 0
                               ? worst_served
                               : std::numeric_limits<double>::infinity();
    total_time += penalty * result.unserved_count;
  }

  result.satisfaction = static_cast<double>(result.local_count) / static_cast<double>(trace.size());
  result.mean_download_time = total_time / static_cast<double>(trace.size());
  return result;
}

std::vector<ExperimentResult> run_experiment(const ScenarioConfig& config) {
  config.validate();
  const int beta_count = static_cast<int>(config.beta_list.size());
  const int seed_count = static_cast<int>(config.seeds.size());
  const int sweep_count = static_cast<int>(config.request_sweep.size());

  std::vector<ExperimentResult> results(
      static_cast<std::size_t>(beta_count) * seed_count * sweep_count);

  const int task_count = beta_count * seed_count;
  parallel_for(task_count, config.threads, [&](int task) {
    const int beta_index = task / seed_count;
    const int seed_index = task % seed_count;
    const double beta = config.beta_list[beta_index];
    const std::uint64_t seed = config.seeds[seed_index];

    World world = generate_world(config, seed);
    const int quota = static_cast<int>(std::lround(beta * config.video_count));
    world.topology.storage_quota.assign(world.topology.sbs_count, quota);

    const auto popularity = build_popularity(world, config, seed);
    const auto demand =
        expected_demand(world, popularity, config.popularity_mode, config.gamma);
    const auto profile =
        build_preference_profile(world, popularity, demand, config.video_quota_cap);
    const auto matched = place_matching(world, profile);
    const auto random = place_random(world, seed);

    for (int sweep_index = 0; sweep_index < sweep_count; ++sweep_index) {
      const int request_count = config.request_sweep[sweep_index];
      const auto trace = generate_requests(
          world, popularity, request_count,
          rng::derive_seed(seed, 0x100 + static_cast<std::uint64_t>(sweep_index)),
          config.request_mode);
      const auto ma = serve_requests(world, matched, trace);
      const auto ra = serve_requests(world, random, trace);

      auto& row = results[(static_cast<std::size_t>(beta_index) * sweep_count + sweep_index) *
                              seed_count +
                          seed_index];
      row = ExperimentResult{beta,   request_count, seed,
                             ma.satisfaction, ra.satisfaction,
                             ma.mean_download_time, ra.mean_download_time};
    }
  });

  return results;
}

void write_results_csv(std::ostream& os, const std::vector<ExperimentResult>& results) {
  os << "beta,requests,seed,sat_ma,sat_ra,time_ma,time_ra\n";
  char buffer[160];
  for (const auto& row : results) {
    std::snprintf(buffer, sizeof(buffer), "%.6g,%d,%llu,%.6g,%.6g,%.6g,%.6g", row.beta,
                  row.request_count, static_cast<unsigned long long>(row.seed), row.sat_ma,
                  row.sat_ra, row.time_ma, row.time_ra);
    os << buffer << '\n';
  }
}

std::vector<ExperimentResult> read_results_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("results CSV is empty");
  if (line == "beta,requests,seed,sat_ma,sat_ra,time_ma,time_ra\r") line.pop_back();
  if (line != "beta,requests,seed,sat_ma,sat_ra,time_ma,time_ra") {
    throw std::runtime_error("results CSV has an unexpected header: " + line);
  }
  std::vector<ExperimentResult> results;
  int line_number = 1;
  while (std::getline(is, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string, 7> fields;
    std::size_t field = 0;
    std::string current;
    for (char c : line) {
      if (c == ',') {
        if (field >= fields.size()) break;
        fields[field++] = current;
        current.clear();
      } else {
        current += c;
      }
    }
    if (field != fields.size() - 1) {
      throw std::runtime_error("results CSV line " + std::to_string(line_number) +
                               " does not have 7 fields");
    }
    fields[field] = current;
    try {
      ExperimentResult row;
      row.beta = std::stod(fields[0]);
      row.request_count = std::stoi(fields[1]);
      row.seed = std::stoull(fields[2]);
      row.sat_ma = std::stod(fields[3]);
      row.sat_ra = std::stod(fields[4]);
      row.time_ma = std::stod(fields[5]);
      row.time_ra = std::stod(fields[6]);
      results.push_back(row);
    } catch (const std::exception&) {
      throw std::runtime_error("results CSV line " + std::to_string(line_number) +
                               " has a malformed value");
    }
  }
  return results;
}

std::vector<SweepPoint> aggregate_over_seeds(const std::vector<ExperimentResult>& results) {
  std::vector<SweepPoint> points;
  for (const auto& row : results) {
    auto it = std::find_if(points.begin(), points.end(), [&](const SweepPoint& p) {
      return p.beta == row.beta && p.request_count == row.request_count;
    });
    if (it == points.end()) {
      points.push_back(SweepPoint{row.beta, row.request_count, 0, 0, 0, 0, 0});
      it = std::prev(points.end());
    }
    it->sat_ma += row.sat_ma;
    it->sat_ra += row.sat_ra;
    it->time_ma += row.time_ma;
    it->time_ra += row.time_ra;
    ++it->replicates;
  }
  for (auto& p : points) {
    p.sat_ma /= p.replicates;
    p.sat_ra /= p.replicates;
    p.time_ma /= p.replicates;
    p.time_ra /= p.replicates;
  }
  std::sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.request_count < b.request_count;
  });
  return points;
}

}  // namespace edgecache
