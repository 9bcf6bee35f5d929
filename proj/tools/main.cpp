// edgecache: proactive edge-cache placement by many-to-many stable matching.
#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "edgecache/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Proactive video caching by many-to-many stable matching"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "results.csv";
  auto* run = app.add_subcommand("run", "Run the configured experiment sweep and write a CSV");
  run->add_option("--config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out", out_path, "Output CSV path");

  int max_size = 4;
  int trials = 1000;
  std::uint64_t seed = 1;
  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify", "Randomized matching property verification");
  verify->add_option("--max-size", max_size, "Largest side of a random instance (1..10)");
  verify->add_option("--trials", trials, "Number of random instances");
  verify->add_option("--seed", seed, "Verification seed");
  verify->add_flag("--inject-fault", inject_fault,
                   "Swap in a broken choice rule; the suite must report it");

  std::string csv_path;
  std::string out_dir = "figures";
  auto* figures = app.add_subcommand("figures", "Aggregate a results CSV into plot-ready series");
  figures->add_option("--csv", csv_path, "CSV produced by run")->required();
  figures->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return edgecache::cmd_run(config_path, out_path);
  if (verify->parsed()) return edgecache::cmd_verify(max_size, trials, seed, inject_fault);
  return edgecache::cmd_figures(csv_path, out_dir);
}
