#include "edgecache/brute_force.hpp"

#include <stdexcept>

namespace edgecache::matching {

namespace {

struct Enumerator {
  int proposer_count;
  int receiver_count;
  std::vector<std::vector<int>> proposer_rank;  // [v][s], -1 unacceptable
  std::vector<std::vector<int>> receiver_rank;  // [s][v]
  std::vector<std::pair<AgentIndex, AgentIndex>> candidate_pairs;
  std::vector<int> proposer_quota;
  std::vector<int> receiver_quota;

  std::vector<char> in_use;        // per candidate pair
  std::vector<int> proposer_load;  // partners currently assigned
  std::vector<int> receiver_load;
  std::vector<Matching> stable;

  // Would `agent` keep `candidate` alongside `partners`, under quota
  // truncation of its ranking? True when a slot is free or the candidate
  // outranks the worst current partner.
  static bool would_keep(const std::vector<int>& rank, int quota, int candidate,
                         const std::vector<AgentIndex>& partners) {
    if (rank[candidate] < 0) return false;
    if (static_cast<int>(partners.size()) < quota) return true;
    int worst = -1;
    for (AgentIndex p : partners) worst = std::max(worst, rank[p]);
    return rank[candidate] < worst;
  }

  bool leaf_is_stable(const Matching& m) const {
    for (const auto& [v, s] : candidate_pairs) {
      if (m.matched(v, s)) continue;
      if (would_keep(proposer_rank[v], proposer_quota[v], s, m.proposer_partners(v)) &&
          would_keep(receiver_rank[s], receiver_quota[s], v, m.receiver_partners(s))) {
        return false;
      }
    }
    return true;
  }

  void recurse(std::size_t pair_index) {
    if (pair_index == candidate_pairs.size()) {
      Matching m(proposer_count, receiver_count);
      for (std::size_t i = 0; i < candidate_pairs.size(); ++i) {
        if (in_use[i]) m.add_pair(candidate_pairs[i].first, candidate_pairs[i].second);
      }
      if (leaf_is_stable(m)) stable.push_back(std::move(m));
      return;
    }
    const auto [v, s] = candidate_pairs[pair_index];
    recurse(pair_index + 1);
    if (proposer_load[v] < proposer_quota[v] && receiver_load[s] < receiver_quota[s]) {
      in_use[pair_index] = 1;
      ++proposer_load[v];
      ++receiver_load[s];
      recurse(pair_index + 1);
      in_use[pair_index] = 0;
      --proposer_load[v];
      --receiver_load[s];
    }
  }
};

}  // namespace

std::vector<Matching> enumerate_pairwise_stable(
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs) {
  Enumerator e;
  e.proposer_count = static_cast<int>(proposer_prefs.size());
  e.receiver_count = static_cast<int>(receiver_prefs.size());
  e.proposer_rank.assign(e.proposer_count, std::vector<int>(e.receiver_count, -1));
  e.receiver_rank.assign(e.receiver_count, std::vector<int>(e.proposer_count, -1));
  for (int v = 0; v < e.proposer_count; ++v) {
    const auto& ranking = proposer_prefs[v].ranking;
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) e.proposer_rank[v][ranking[pos]] = static_cast<int>(pos);
    e.proposer_quota.push_back(proposer_prefs[v].quota);
  }
  for (int s = 0; s < e.receiver_count; ++s) {
    const auto& ranking = receiver_prefs[s].ranking;
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) e.receiver_rank[s][ranking[pos]] = static_cast<int>(pos);
    e.receiver_quota.push_back(receiver_prefs[s].quota);
  }
  for (int v = 0; v < e.proposer_count; ++v) {
    for (int s = 0; s < e.receiver_count; ++s) {
      if (e.proposer_rank[v][s] >= 0 && e.receiver_rank[s][v] >= 0) {
        e.candidate_pairs.emplace_back(v, s);
      }
    }
  }
  if (e.candidate_pairs.size() > 20) {
    throw std::invalid_argument("brute-force enumeration limited to 20 mutually acceptable pairs");
  }
  e.in_use.assign(e.candidate_pairs.size(), 0);
  e.proposer_load.assign(e.proposer_count, 0);
  e.receiver_load.assign(e.receiver_count, 0);
  e.recurse(0);
  return std::move(e.stable);
}

}  // namespace edgecache::matching
