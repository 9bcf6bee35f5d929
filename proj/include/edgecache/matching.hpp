// Many-to-many matching engine: quota-truncated choice functions over strict
// rankings, a deferred-acceptance round loop with full trace recording, and
// verifiers for pairwise stability, substitutability and the trace monotonicity
// properties the round loop must obey.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace edgecache::matching {

// Agents are dense indices within their own side (proposer or receiver).
using AgentIndex = int;

// Strict ranking over the opposite side plus a capacity. Agents missing from
// `ranking` are unacceptable to the owner: never proposed to, always rejected.
struct PreferenceOrder {
  AgentIndex owner{0};
  std::vector<AgentIndex> ranking;  // most preferred first, no duplicates
  int quota{1};

  bool operator==(const PreferenceOrder&) const = default;
};

// Throws std::invalid_argument on duplicate ranking entries, out-of-range
// indices, owner/position mismatch or quota < 1.
void validate_preference_profile(const std::vector<PreferenceOrder>& proposer_prefs,
                                 const std::vector<PreferenceOrder>& receiver_prefs);

// C(S): the min(quota, |S ∩ ranking|) highest-ranked members of `candidates`,
// returned in preference order. Duplicated candidates count once.
std::vector<AgentIndex> choice_set(const PreferenceOrder& pref,
                                   std::span<const AgentIndex> candidates);

// Bilateral assignment with symmetric partner views. Quota limits live in the
// preference orders; see matching_invariant_violation for the structural check.
class Matching {
 public:
  Matching() = default;
  Matching(int proposer_count, int receiver_count);

  int proposer_count() const { return static_cast<int>(by_proposer_.size()); }
  int receiver_count() const { return static_cast<int>(by_receiver_.size()); }

  void add_pair(AgentIndex proposer, AgentIndex receiver);
  bool matched(AgentIndex proposer, AgentIndex receiver) const;
  const std::vector<AgentIndex>& proposer_partners(AgentIndex proposer) const;
  const std::vector<AgentIndex>& receiver_partners(AgentIndex receiver) const;

  // All pairs sorted by (proposer, receiver).
  std::vector<std::pair<AgentIndex, AgentIndex>> pairs() const;
  int pair_count() const;

  bool operator==(const Matching&) const = default;

 private:
  std::vector<std::vector<AgentIndex>> by_proposer_;  // sorted partner lists
  std::vector<std::vector<AgentIndex>> by_receiver_;
};

// Description of the first violated condition (quota bounds, symmetry, index
// ranges), or nullopt when the matching is structurally sound.
std::optional<std::string> matching_invariant_violation(
    const Matching& matching,
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs);

struct TraceRound {
  // First-time proposals issued this round, (proposer, receiver).
  std::vector<std::pair<AgentIndex, AgentIndex>> proposals;
  // Rejections issued this round, (proposer, receiver).
  std::vector<std::pair<AgentIndex, AgentIndex>> rejections;
  // Choice set each proposer holds open this round, preference order.
  std::vector<std::vector<AgentIndex>> proposer_choice_sets;
  // Proposals received per receiver this round, ascending proposer index.
  std::vector<std::vector<AgentIndex>> receiver_proposals;

  bool operator==(const TraceRound&) const = default;
};

struct MatchingTrace {
  int proposer_count{0};
  int receiver_count{0};
  std::vector<TraceRound> rounds;  // rounds[k] is round k, numbered from 0

  bool operator==(const MatchingTrace&) const = default;
};

struct DeferredAcceptanceResult {
  Matching matching;
  MatchingTrace trace;
};

// Receiver-side keep rule used by the round loop; test hook for injecting
// non-substitutable behavior. Returned agents outside `proposals` are ignored.
using ReceiverChoice =
    std::function<std::vector<AgentIndex>(AgentIndex receiver, std::span<const AgentIndex> proposals)>;

// One simultaneous round per iteration: every proposer offers to its choice
// set among receivers that never rejected it, every receiver keeps its choice
// set of the received offers and rejects the rest; stops when a round issues
// no rejection. Deterministic. Throws std::runtime_error if the round count
// ever exceeds |proposers|*|receivers| + 1, which a correct run cannot reach.
DeferredAcceptanceResult run_deferred_acceptance(
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs);

DeferredAcceptanceResult run_deferred_acceptance(
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs,
    const ReceiverChoice& receiver_choice);

struct BlockingPair {
  AgentIndex proposer{0};
  AgentIndex receiver{0};

  bool operator==(const BlockingPair&) const = default;
};

// First unmatched pair (ascending proposer, then receiver) where each side
// would keep the other in its choice set alongside current partners.
std::optional<BlockingPair> find_blocking_pair(
    const Matching& matching,
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs);

bool is_pairwise_stable(const Matching& matching,
                        const std::vector<PreferenceOrder>& proposer_prefs,
                        const std::vector<PreferenceOrder>& receiver_prefs);

using ChoiceFunction = std::function<std::vector<AgentIndex>(std::span<const AgentIndex>)>;

// Exhaustively verifies that removing any chosen agent never evicts another
// chosen agent, over every subset of `universe`. Throws std::invalid_argument
// when |universe| > 15 (2^|universe| subsets are enumerated).
bool check_substitutability(const ChoiceFunction& choice, std::span<const AgentIndex> universe);
bool check_substitutability(const PreferenceOrder& pref, std::span<const AgentIndex> universe);

struct TraceViolation {
  int proposition{0};  // 1 = open offer dropped, 2 = choice set readmits a rejected agent
  int round{0};
  AgentIndex proposer{0};
  AgentIndex receiver{0};
};

// Checks, against a recorded trace: (1) a receiver kept in a proposer's choice
// set stays there in the next round unless it rejected the proposer, and
// (2) once a receiver rejects a proposer, no later receiver choice set would
// readmit it. Empty result means the trace is clean.
std::vector<TraceViolation> verify_trace_propositions(
    const MatchingTrace& trace,
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs);

bool trace_propositions_hold(const MatchingTrace& trace,
                             const std::vector<PreferenceOrder>& proposer_prefs,
                             const std::vector<PreferenceOrder>& receiver_prefs);

// Debug log, exactly one line per round.
void write_trace_log(std::ostream& os, const MatchingTrace& trace);

}  // namespace edgecache::matching
