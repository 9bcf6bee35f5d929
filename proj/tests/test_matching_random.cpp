// Randomized properties of the round loop: every outcome is structurally
// sound, pairwise stable, trace-clean, agrees with brute force on small
// instances, and the whole pipeline is deterministic.
#include <algorithm>

#include "doctest.h"
#include "edgecache/brute_force.hpp"
#include "edgecache/matching.hpp"
#include "edgecache/rng.hpp"
#include "edgecache/verify.hpp"

using namespace edgecache;
using namespace edgecache::matching;

TEST_CASE("random instances: stability, structure and trace propositions") {
  for (int trial = 0; trial < 300; ++trial) {
    rng::Engine eng(rng::derive_seed(7001, trial));
    const auto instance = random_instance(eng, 10, 10, 3);
    const auto result = run_deferred_acceptance(instance.proposer_prefs, instance.receiver_prefs);

    CAPTURE(trial);
    CHECK(!matching_invariant_violation(result.matching, instance.proposer_prefs,
                                        instance.receiver_prefs)
               .has_value());
    CHECK(is_pairwise_stable(result.matching, instance.proposer_prefs, instance.receiver_prefs));
    CHECK(trace_propositions_hold(result.trace, instance.proposer_prefs,
                                  instance.receiver_prefs));

    // Every round but the last issues at least one rejection, and the total is
    // bounded by the size of the pair grid.
    int total_rejections = 0;
    for (std::size_t k = 0; k < result.trace.rounds.size(); ++k) {
      const bool last = k + 1 == result.trace.rounds.size();
      if (!last) CHECK(!result.trace.rounds[k].rejections.empty());
      if (last) CHECK(result.trace.rounds[k].rejections.empty());
      total_rejections += static_cast<int>(result.trace.rounds[k].rejections.size());
    }
    CHECK(total_rejections <= static_cast<int>(instance.proposer_prefs.size() *
                                               instance.receiver_prefs.size()));
  }
}

TEST_CASE("random small instances agree with the brute-force stable set") {
  for (int trial = 0; trial < 200; ++trial) {
    rng::Engine eng(rng::derive_seed(7002, trial));
    const auto instance = random_instance(eng, 4, 4, 2);
    const auto result = run_deferred_acceptance(instance.proposer_prefs, instance.receiver_prefs);
    const auto stable_set =
        enumerate_pairwise_stable(instance.proposer_prefs, instance.receiver_prefs);

    CAPTURE(trial);
    CAPTURE(instance_to_json(instance));
    CHECK(std::find(stable_set.begin(), stable_set.end(), result.matching) != stable_set.end());
  }
}

TEST_CASE("deferred acceptance is deterministic") {
  rng::Engine eng(rng::derive_seed(7003, 0));
  const auto instance = random_instance(eng, 8, 8, 3);
  const auto first = run_deferred_acceptance(instance.proposer_prefs, instance.receiver_prefs);
  const auto second = run_deferred_acceptance(instance.proposer_prefs, instance.receiver_prefs);
  CHECK(first.matching == second.matching);
  CHECK(first.trace == second.trace);
}

TEST_CASE("verification suite reports clean runs and injected faults") {
  SUBCASE("clean run") {
    VerifyOptions options;
    options.trials = 50;
    options.max_side = 6;
    options.seed = 99;
    const auto report = run_matching_verification(options);
    CHECK(report.ok());
    CHECK(report.stability_checked == 50);
    CHECK(report.oracle_checked == 50);
    CHECK(report.counterexample.empty());
  }
  SUBCASE("zero trials pass vacuously") {
    VerifyOptions options;
    options.trials = 0;
    const auto report = run_matching_verification(options);
    CHECK(report.ok());
    CHECK(report.stability_checked == 0);
  }
  SUBCASE("fault injection is detected with a counterexample") {
    VerifyOptions options;
    options.trials = 10;
    options.inject_fault = true;
    const auto report = run_matching_verification(options);
    CHECK(!report.ok());
    CHECK(!report.counterexample.empty());
  }
  SUBCASE("oversized bound is rejected") {
    VerifyOptions options;
    options.max_side = 11;
    CHECK_THROWS_AS(run_matching_verification(options), std::invalid_argument);
  }
}
