// Randomized self-check suite for the matching engine: stability, trace
// propositions, substitutability of the quota-truncation choice rule, and
// agreement with the brute-force enumeration on small instances.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecache/matching.hpp"
#include "edgecache/rng.hpp"

namespace edgecache::matching {

struct RandomInstance {
  std::vector<PreferenceOrder> proposer_prefs;
  std::vector<PreferenceOrder> receiver_prefs;
};

// Sides of 1..max_proposers x 1..max_receivers, rankings over random subsets
// (partial acceptability included), quotas 1..max_quota.
RandomInstance random_instance(rng::Engine& eng, int max_proposers, int max_receivers,
                               int max_quota);

std::string instance_to_json(const RandomInstance& instance);

struct VerifyOptions {
  int trials{1000};
  int max_side{4};     // side bound for the stability/trace stream
  int max_quota{3};
  std::uint64_t seed{1};
  bool inject_fault{false};  // swap in a non-substitutable choice rule and expect detection
};

struct VerifyReport {
  int trials{0};
  int stability_checked{0};
  int stability_failed{0};
  int trace_checked{0};
  int trace_failed{0};
  int oracle_checked{0};
  int oracle_failed{0};
  int substitutability_checked{0};
  int substitutability_failed{0};
  std::string counterexample;  // JSON for the first failure, empty when clean

  bool ok() const {
    return stability_failed == 0 && trace_failed == 0 && oracle_failed == 0 &&
           substitutability_failed == 0;
  }
};

// Guard: max_side above 10 is rejected (the brute-force stream stays at <= 4
// per side with quotas <= 2 regardless).
VerifyReport run_matching_verification(const VerifyOptions& options);

// The deliberately broken choice rule used by fault injection: dropping one
// chosen agent from {0,1,2} flips the kept set.
std::vector<AgentIndex> pathological_choice(std::span<const AgentIndex> offered);

}  // namespace edgecache::matching
