#include "edgecache/matching.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace edgecache::matching {

namespace {

// rank[opposite] = position in the owner's ranking, -1 if unacceptable.
std::vector<int> rank_table(const PreferenceOrder& pref, int opposite_count) {
  std::vector<int> rank(opposite_count, -1);
  for (std::size_t pos = 0; pos < pref.ranking.size(); ++pos) {
    rank[pref.ranking[pos]] = static_cast<int>(pos);
  }
  return rank;
}

void validate_side(const std::vector<PreferenceOrder>& prefs, int opposite_count,
                   const char* side_name) {
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    const auto& pref = prefs[i];
    if (pref.owner != static_cast<AgentIndex>(i)) {
      throw std::invalid_argument(std::string(side_name) + " preference order at position " +
                                  std::to_string(i) + " has owner " + std::to_string(pref.owner));
    }
    if (pref.quota < 1) {
      throw std::invalid_argument(std::string(side_name) + " agent " + std::to_string(i) +
                                  " has quota < 1");
    }
    std::unordered_set<AgentIndex> seen;
    for (AgentIndex other : pref.ranking) {
      if (other < 0 || other >= opposite_count) {
        throw std::invalid_argument(std::string(side_name) + " agent " + std::to_string(i) +
                                    " ranks out-of-range agent " + std::to_string(other));
      }
      if (!seen.insert(other).second) {
        throw std::invalid_argument(std::string(side_name) + " agent " + std::to_string(i) +
                                    " ranks agent " + std::to_string(other) + " twice");
      }
    }
  }
}

}  // namespace

void validate_preference_profile(const std::vector<PreferenceOrder>& proposer_prefs,
                                 const std::vector<PreferenceOrder>& receiver_prefs) {
  validate_side(proposer_prefs, static_cast<int>(receiver_prefs.size()), "proposer");
  validate_side(receiver_prefs, static_cast<int>(proposer_prefs.size()), "receiver");
}

std::vector<AgentIndex> choice_set(const PreferenceOrder& pref,
                                   std::span<const AgentIndex> candidates) {
  std::unordered_set<AgentIndex> offered(candidates.begin(), candidates.end());
  std::vector<AgentIndex> chosen;
  for (AgentIndex other : pref.ranking) {
    if (static_cast<int>(chosen.size()) >= pref.quota) break;
    if (offered.count(other) != 0) chosen.push_back(other);
  }
  return chosen;
}

Matching::Matching(int proposer_count, int receiver_count)
    : by_proposer_(proposer_count), by_receiver_(receiver_count) {}

void Matching::add_pair(AgentIndex proposer, AgentIndex receiver) {
  auto& ps = by_proposer_.at(proposer);
  auto it = std::lower_bound(ps.begin(), ps.end(), receiver);
  if (it != ps.end() && *it == receiver) return;
  ps.insert(it, receiver);
  auto& rs = by_receiver_.at(receiver);
  rs.insert(std::lower_bound(rs.begin(), rs.end(), proposer), proposer);
}

bool Matching::matched(AgentIndex proposer, AgentIndex receiver) const {
  const auto& ps = by_proposer_.at(proposer);
  return std::binary_search(ps.begin(), ps.end(), receiver);
}

const std::vector<AgentIndex>& Matching::proposer_partners(AgentIndex proposer) const {
  return by_proposer_.at(proposer);
}

const std::vector<AgentIndex>& Matching::receiver_partners(AgentIndex receiver) const {
  return by_receiver_.at(receiver);
}

std::vector<std::pair<AgentIndex, AgentIndex>> Matching::pairs() const {
  std::vector<std::pair<AgentIndex, AgentIndex>> out;
  for (int v = 0; v < proposer_count(); ++v) {
    for (AgentIndex s : by_proposer_[v]) out.emplace_back(v, s);
  }
  return out;
}

int Matching::pair_count() const {
  int n = 0;
  for (const auto& ps : by_proposer_) n += static_cast<int>(ps.size());
  return n;
}

std::optional<std::string> matching_invariant_violation(
    const Matching& matching,
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs) {
  const int P = static_cast<int>(proposer_prefs.size());
  const int R = static_cast<int>(receiver_prefs.size());
  if (matching.proposer_count() != P || matching.receiver_count() != R) {
    return "matching side sizes disagree with the preference profile";
  }
  for (int v = 0; v < P; ++v) {
    const auto& partners = matching.proposer_partners(v);
    if (static_cast<int>(partners.size()) > proposer_prefs[v].quota) {
      return "proposer " + std::to_string(v) + " exceeds its quota";
    }
    for (AgentIndex s : partners) {
      if (s < 0 || s >= R) return "proposer " + std::to_string(v) + " matched out of range";
      const auto& back = matching.receiver_partners(s);
      if (!std::binary_search(back.begin(), back.end(), v)) {
        return "pair (" + std::to_string(v) + "," + std::to_string(s) + ") lacks the receiver view";
      }
    }
  }
  for (int s = 0; s < R; ++s) {
    const auto& partners = matching.receiver_partners(s);
    if (static_cast<int>(partners.size()) > receiver_prefs[s].quota) {
      return "receiver " + std::to_string(s) + " exceeds its quota";
    }
    for (AgentIndex v : partners) {
      if (v < 0 || v >= P) return "receiver " + std::to_string(s) + " matched out of range";
      if (!matching.matched(v, s)) {
        return "pair (" + std::to_string(v) + "," + std::to_string(s) + ") lacks the proposer view";
      }
    }
  }
  return std::nullopt;
}

DeferredAcceptanceResult run_deferred_acceptance(
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs) {
  return run_deferred_acceptance(proposer_prefs, receiver_prefs, ReceiverChoice{});
}

DeferredAcceptanceResult run_deferred_acceptance(
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs,
    const ReceiverChoice& receiver_choice) {
  validate_preference_profile(proposer_prefs, receiver_prefs);
  const int P = static_cast<int>(proposer_prefs.size());
  const int R = static_cast<int>(receiver_prefs.size());

  std::vector<std::vector<int>> receiver_rank(R);
  for (int s = 0; s < R; ++s) receiver_rank[s] = rank_table(receiver_prefs[s], P);

  std::vector<std::vector<char>> rejected(P, std::vector<char>(R, 0));
  std::vector<std::vector<char>> proposed(P, std::vector<char>(R, 0));
  std::vector<char> offered_now(P, 0);  // scratch, per receiver
  std::vector<char> kept_now(P, 0);

  MatchingTrace trace{P, R, {}};
  for (int round = 0;; ++round) {
    if (round > P * R) {
      throw std::runtime_error("deferred acceptance exceeded the round bound of " +
                               std::to_string(P * R + 1) + " rounds");
    }
    TraceRound tr;
    tr.proposer_choice_sets.resize(P);
    tr.receiver_proposals.resize(R);

    for (int v = 0; v < P; ++v) {
      auto& open = tr.proposer_choice_sets[v];
      for (AgentIndex s : proposer_prefs[v].ranking) {
        if (static_cast<int>(open.size()) >= proposer_prefs[v].quota) break;
        if (rejected[v][s]) continue;
        open.push_back(s);
        tr.receiver_proposals[s].push_back(v);
        if (!proposed[v][s]) {
          proposed[v][s] = 1;
          tr.proposals.emplace_back(v, s);
        }
      }
    }

    for (int s = 0; s < R; ++s) {
      const auto& offers = tr.receiver_proposals[s];
      if (offers.empty()) continue;
      for (AgentIndex v : offers) offered_now[v] = 1;

      std::vector<AgentIndex> kept;
      if (receiver_choice) {
        for (AgentIndex v : receiver_choice(s, offers)) {
          if (v >= 0 && v < P && offered_now[v]) kept.push_back(v);
        }
      } else {
        const auto& rank = receiver_rank[s];
        for (AgentIndex v : receiver_prefs[s].ranking) {
          if (static_cast<int>(kept.size()) >= receiver_prefs[s].quota) break;
          if (offered_now[v] && rank[v] >= 0) kept.push_back(v);
        }
      }
      for (AgentIndex v : kept) kept_now[v] = 1;
      for (AgentIndex v : offers) {
        if (!kept_now[v]) {
          rejected[v][s] = 1;
          tr.rejections.emplace_back(v, s);
        }
      }
      for (AgentIndex v : offers) offered_now[v] = 0;
      for (AgentIndex v : kept) kept_now[v] = 0;
    }

    const bool settled = tr.rejections.empty();
    trace.rounds.push_back(std::move(tr));
    if (settled) break;
  }

  Matching matching(P, R);
  const auto& final_round = trace.rounds.back();
  for (int v = 0; v < P; ++v) {
    for (AgentIndex s : final_round.proposer_choice_sets[v]) matching.add_pair(v, s);
  }
  return DeferredAcceptanceResult{std::move(matching), std::move(trace)};
}

std::optional<BlockingPair> find_blocking_pair(
    const Matching& matching,
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs) {
  const int P = static_cast<int>(proposer_prefs.size());
  const int R = static_cast<int>(receiver_prefs.size());
  std::vector<AgentIndex> with_candidate;
  for (int v = 0; v < P; ++v) {
    const auto& held = matching.proposer_partners(v);
    for (int s = 0; s < R; ++s) {
      if (matching.matched(v, s)) continue;
      with_candidate.assign(held.begin(), held.end());
      with_candidate.push_back(s);
      const auto kept_by_v = choice_set(proposer_prefs[v], with_candidate);
      if (std::find(kept_by_v.begin(), kept_by_v.end(), s) == kept_by_v.end()) continue;

      const auto& receiving = matching.receiver_partners(s);
      with_candidate.assign(receiving.begin(), receiving.end());
      with_candidate.push_back(v);
      const auto kept_by_s = choice_set(receiver_prefs[s], with_candidate);
      if (std::find(kept_by_s.begin(), kept_by_s.end(), v) != kept_by_s.end()) {
        return BlockingPair{v, s};
      }
    }
  }
  return std::nullopt;
}

bool is_pairwise_stable(const Matching& matching,
                        const std::vector<PreferenceOrder>& proposer_prefs,
                        const std::vector<PreferenceOrder>& receiver_prefs) {
  return !find_blocking_pair(matching, proposer_prefs, receiver_prefs).has_value();
}

bool check_substitutability(const ChoiceFunction& choice, std::span<const AgentIndex> universe) {
  if (universe.size() > 15) {
    throw std::invalid_argument("substitutability check enumerates all subsets; universe above 15");
  }
  const int n = static_cast<int>(universe.size());
  std::vector<AgentIndex> subset;
  std::vector<AgentIndex> reduced;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    subset.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(universe[i]);
    }
    const auto chosen = choice(subset);
    for (AgentIndex dropped : chosen) {
      reduced.clear();
      for (AgentIndex a : subset) {
        if (a != dropped) reduced.push_back(a);
      }
      const auto chosen_after = choice(reduced);
      for (AgentIndex keep : chosen) {
        if (keep == dropped) continue;
        if (std::find(chosen_after.begin(), chosen_after.end(), keep) == chosen_after.end()) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check_substitutability(const PreferenceOrder& pref, std::span<const AgentIndex> universe) {
  return check_substitutability(
      [&pref](std::span<const AgentIndex> s) { return choice_set(pref, s); }, universe);
}

std::vector<TraceViolation> verify_trace_propositions(
    const MatchingTrace& trace,
    const std::vector<PreferenceOrder>& /*proposer_prefs*/,
    const std::vector<PreferenceOrder>& receiver_prefs) {
  std::vector<TraceViolation> violations;
  const int R = trace.receiver_count;
  const int rounds = static_cast<int>(trace.rounds.size());

  // Per-round rejection membership, keyed by proposer * R + receiver.
  std::vector<std::unordered_set<long long>> rejected_at(rounds);
  for (int k = 0; k < rounds; ++k) {
    for (const auto& [v, s] : trace.rounds[k].rejections) {
      rejected_at[k].insert(static_cast<long long>(v) * R + s);
    }
  }

  // Offers remain open: a receiver held at round k-1 and not rejecting there
  // must still be held at round k.
  for (int k = 1; k < rounds; ++k) {
    const auto& prev = trace.rounds[k - 1].proposer_choice_sets;
    const auto& cur = trace.rounds[k].proposer_choice_sets;
    for (int v = 0; v < trace.proposer_count; ++v) {
      for (AgentIndex s : prev[v]) {
        if (rejected_at[k - 1].count(static_cast<long long>(v) * R + s) != 0) continue;
        if (std::find(cur[v].begin(), cur[v].end(), s) == cur[v].end()) {
          violations.push_back(TraceViolation{1, k, v, s});
        }
      }
    }
  }

  // Rejections are final: after s rejects v at round k, no later received set,
  // extended with v, may have s choose v again.
  std::vector<AgentIndex> with_candidate;
  for (int k = 0; k < rounds; ++k) {
    for (const auto& [v, s] : trace.rounds[k].rejections) {
      for (int p = k; p < rounds; ++p) {
        const auto& received = trace.rounds[p].receiver_proposals[s];
        with_candidate.assign(received.begin(), received.end());
        with_candidate.push_back(v);
        const auto kept = choice_set(receiver_prefs[s], with_candidate);
        if (std::find(kept.begin(), kept.end(), v) != kept.end()) {
          violations.push_back(TraceViolation{2, p, v, s});
        }
      }
    }
  }

  return violations;
}

bool trace_propositions_hold(const MatchingTrace& trace,
                             const std::vector<PreferenceOrder>& proposer_prefs,
                             const std::vector<PreferenceOrder>& receiver_prefs) {
  return verify_trace_propositions(trace, proposer_prefs, receiver_prefs).empty();
}

void write_trace_log(std::ostream& os, const MatchingTrace& trace) {
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const auto& round = trace.rounds[k];
    os << "round " << k << ": open";
    for (int v = 0; v < trace.proposer_count; ++v) {
      os << " v" << v << "->{";
      const auto& open = round.proposer_choice_sets[v];
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (i > 0) os << ",";
        os << "s" << open[i];
      }
      os << "}";
    }
    os << " | rejections";
    if (round.rejections.empty()) {
      os << " none";
    } else {
      for (const auto& [v, s] : round.rejections) os << " (v" << v << ",s" << s << ")";
    }
    os << "\n";
  }
}

}  // namespace edgecache::matching
