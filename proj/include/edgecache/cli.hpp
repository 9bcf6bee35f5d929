// Command front end behind the `edgecache` binary. Exit codes: 0 success,
// 1 validation or I/O failure, 2 property violation.
#pragma once

#include <cstdint>
#include <iostream>
#include <string>

namespace edgecache {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitViolation = 2;

// Runs the configured experiment sweep and writes the results CSV to
// `out_path`, printing a seed-averaged summary line per sweep point.
int cmd_run(const std::string& config_path, const std::string& out_path,
            std::ostream& out = std::cout, std::ostream& err = std::cerr);

// Randomized matching verification: stability, trace propositions,
// substitutability and brute-force agreement. `inject_fault` swaps in a broken
// choice rule to prove the suite can fail.
int cmd_verify(int max_size, int trials, std::uint64_t seed, bool inject_fault,
               std::ostream& out = std::cout, std::ostream& err = std::cerr);

// Aggregates a results CSV over seeds into satisfaction.csv and
// download_time.csv under `out_dir`.
int cmd_figures(const std::string& csv_path, const std::string& out_dir,
                std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace edgecache
