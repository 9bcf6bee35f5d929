#include "edgecache/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "edgecache/brute_force.hpp"
#include "json.hpp"

namespace edgecache::matching {

namespace {

std::vector<PreferenceOrder> random_side(rng::Engine& eng, int own_count, int opposite_count,
                                         int max_quota) {
  std::vector<PreferenceOrder> prefs(own_count);
  for (int i = 0; i < own_count; ++i) {
    prefs[i].owner = i;
    prefs[i].quota = rng::uniform_int(eng, 1, max_quota);
    const int ranked = rng::uniform_int(eng, 0, opposite_count);
    std::vector<int> pool(opposite_count);
    for (int j = 0; j < opposite_count; ++j) pool[j] = j;
    rng::shuffle(eng, pool);
    prefs[i].ranking.assign(pool.begin(), pool.begin() + ranked);
  }
  return prefs;
}

nlohmann::json side_to_json(const std::vector<PreferenceOrder>& prefs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : prefs) {
    arr.push_back({{"owner", p.owner}, {"quota", p.quota}, {"ranking", p.ranking}});
  }
  return arr;
}

}  // namespace

RandomInstance random_instance(rng::Engine& eng, int max_proposers, int max_receivers,
                               int max_quota) {
  const int P = rng::uniform_int(eng, 1, max_proposers);
  const int R = rng::uniform_int(eng, 1, max_receivers);
  RandomInstance instance;
  instance.proposer_prefs = random_side(eng, P, R, max_quota);
  instance.receiver_prefs = random_side(eng, R, P, max_quota);
  return instance;
}

std::string instance_to_json(const RandomInstance& instance) {
  nlohmann::json j{{"proposers", side_to_json(instance.proposer_prefs)},
                   {"receivers", side_to_json(instance.receiver_prefs)}};
  return j.dump();
}

std::vector<AgentIndex> pathological_choice(std::span<const AgentIndex> offered) {
  std::vector<AgentIndex> sorted(offered.begin(), offered.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted == std::vector<AgentIndex>{0, 1, 2}) return {0, 1};
  if (sorted == std::vector<AgentIndex>{0, 2}) return {2};
  if (sorted.size() > 2) sorted.resize(2);
  return sorted;
}

VerifyReport run_matching_verification(const VerifyOptions& options) {
  if (options.max_side < 1 || options.max_side > 10) {
    throw std::invalid_argument("verification side bound must be within 1..10");
  }
  if (options.trials < 0) throw std::invalid_argument("trials must be non-negative");

  VerifyReport report;
  report.trials = options.trials;

  auto record_failure = [&report](const RandomInstance& instance, const std::string& what) {
    if (report.counterexample.empty()) {
      nlohmann::json j = nlohmann::json::parse(instance_to_json(instance));
      j["failure"] = what;
      report.counterexample = j.dump();
    }
  };

  if (options.inject_fault) {
    // The verifier must flag the broken rule; the counterexample names it.
    const std::vector<AgentIndex> universe{0, 1, 2};
    ++report.substitutability_checked;
    if (!check_substitutability(ChoiceFunction(pathological_choice), universe)) {
      ++report.substitutability_failed;
      report.counterexample =
          "{\"failure\":\"injected choice rule keeps {0,1} from {0,1,2} but {2} from {0,2}\"}";
    }
    return report;
  }

  for (int trial = 0; trial < options.trials; ++trial) {
    rng::Engine eng(rng::derive_seed(options.seed, static_cast<std::uint64_t>(trial)));

    // Stream A: stability and trace propositions at the requested size.
    {
      const auto instance =
          random_instance(eng, options.max_side, options.max_side, options.max_quota);
      const auto result =
          run_deferred_acceptance(instance.proposer_prefs, instance.receiver_prefs);

      ++report.stability_checked;
      if (const auto violation = matching_invariant_violation(
              result.matching, instance.proposer_prefs, instance.receiver_prefs)) {
        ++report.stability_failed;
        record_failure(instance, "structural: " + *violation);
      } else if (const auto blocking = find_blocking_pair(
                     result.matching, instance.proposer_prefs, instance.receiver_prefs)) {
        ++report.stability_failed;
        record_failure(instance, "blocking pair (" + std::to_string(blocking->proposer) + "," +
                                     std::to_string(blocking->receiver) + ")");
      }

      ++report.trace_checked;
      if (!trace_propositions_hold(result.trace, instance.proposer_prefs,
                                   instance.receiver_prefs)) {
        ++report.trace_failed;
        record_failure(instance, "trace proposition violated");
      }

      // Spot-check substitutability of one quota-truncation choice function.
      const auto& pref = instance.receiver_prefs[rng::uniform_int(
          eng, 0, static_cast<int>(instance.receiver_prefs.size()) - 1)];
      std::vector<AgentIndex> universe(instance.proposer_prefs.size());
      for (std::size_t i = 0; i < universe.size(); ++i) universe[i] = static_cast<int>(i);
      ++report.substitutability_checked;
      if (!check_substitutability(pref, universe)) {
        ++report.substitutability_failed;
        record_failure(instance, "quota-truncation choice is not substitutable");
      }
    }

    // Stream B: brute-force agreement on a small instance.
    {
      const auto instance = random_instance(eng, 4, 4, 2);
      const auto result =
          run_deferred_acceptance(instance.proposer_prefs, instance.receiver_prefs);
      const auto stable_set =
          enumerate_pairwise_stable(instance.proposer_prefs, instance.receiver_prefs);
      ++report.oracle_checked;
      if (std::find(stable_set.begin(), stable_set.end(), result.matching) == stable_set.end()) {
        ++report.oracle_failed;
        record_failure(instance, "output not in the enumerated stable set");
      }
      ++report.trace_checked;
      if (!trace_propositions_hold(result.trace, instance.proposer_prefs,
                                   instance.receiver_prefs)) {
        ++report.trace_failed;
        record_failure(instance, "trace proposition violated (oracle stream)");
      }
    }
  }

  return report;
}

}  // namespace edgecache::matching
