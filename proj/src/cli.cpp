#include "edgecache/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgecache/cache_sim.hpp"
#include "edgecache/config.hpp"
#include "edgecache/verify.hpp"

namespace edgecache {

namespace {

std::string format6(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  ScenarioConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::vector<ExperimentResult> results;
  try {
    results = run_experiment(config);
  } catch (const std::exception& e) {
    err << "error: experiment failed: " << e.what() << "\n";
    return kExitValidation;
  }

  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) {
    err << "error: cannot open output file: " << out_path << "\n";
    return kExitValidation;
  }
  write_results_csv(csv, results);
  csv.close();
  if (!csv) {
    err << "error: failed writing output file: " << out_path << "\n";
    return kExitValidation;
  }

  // The headline numbers depend on the generation modes; echo them.
  out << "# popularity_mode=" << to_string(config.popularity_mode)
      << " request_mode=" << to_string(config.request_mode)
      << " connectivity=" << to_string(config.connectivity)
      << " seeds=" << config.seeds.size() << "\n";
  for (const auto& point : aggregate_over_seeds(results)) {
    out << "beta=" << format6(point.beta) << " requests=" << point.request_count
        << " sat_ma=" << format6(point.sat_ma) << " sat_ra=" << format6(point.sat_ra)
        << " time_ma=" << format6(point.time_ma) << " time_ra=" << format6(point.time_ra)
        << "\n";
  }
  out << "wrote " << results.size() << " rows to " << out_path << "\n";
  return kExitOk;
}

int cmd_verify(int max_size, int trials, std::uint64_t seed, bool inject_fault, std::ostream& out,
               std::ostream& err) {
  matching::VerifyOptions options;
  options.trials = trials;
  options.max_side = max_size;
  options.seed = seed;
  options.inject_fault = inject_fault;

  matching::VerifyReport report;
  try {
    report = matching::run_matching_verification(options);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  out << "trials: " << report.trials << "\n";
  out << "stability: " << (report.stability_checked - report.stability_failed) << "/"
      << report.stability_checked << " passed\n";
  out << "trace propositions: " << (report.trace_checked - report.trace_failed) << "/"
      << report.trace_checked << " passed\n";
  out << "brute-force agreement: " << (report.oracle_checked - report.oracle_failed) << "/"
      << report.oracle_checked << " passed\n";
  out << "substitutability: "
      << (report.substitutability_checked - report.substitutability_failed) << "/"
      << report.substitutability_checked << " passed\n";
  if (!report.ok()) {
    err << "counterexample: " << report.counterexample << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_figures(const std::string& csv_path, const std::string& out_dir, std::ostream& out,
                std::ostream& err) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    err << "error: cannot open results CSV: " << csv_path << "\n";
    return kExitValidation;
  }
  std::vector<ExperimentResult> results;
  try {
    results = read_results_csv(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    err << "error: cannot create output directory: " << out_dir << "\n";
    return kExitValidation;
  }

  const auto points = aggregate_over_seeds(results);
  const auto satisfaction_path = std::filesystem::path(out_dir) / "satisfaction.csv";
  const auto time_path = std::filesystem::path(out_dir) / "download_time.csv";

  std::ofstream sat(satisfaction_path, std::ios::binary);
  std::ofstream tim(time_path, std::ios::binary);
  if (!sat || !tim) {
    err << "error: cannot open figure outputs under " << out_dir << "\n";
    return kExitValidation;
  }
  sat << "beta,requests,sat_ma,sat_ra\n";
  tim << "beta,requests,time_ma,time_ra\n";
  for (const auto& p : points) {
    sat << format6(p.beta) << ',' << p.request_count << ',' << format6(p.sat_ma) << ','
        << format6(p.sat_ra) << '\n';
    tim << format6(p.beta) << ',' << p.request_count << ',' << format6(p.time_ma) << ','
        << format6(p.time_ra) << '\n';
  }
  out << "wrote " << points.size() << " sweep points to " << satisfaction_path.string() << " and "
      << time_path.string() << "\n";
  return kExitOk;
}

}  // namespace edgecache
