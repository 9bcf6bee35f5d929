// Exhaustive reference for tiny instances: enumerate every feasible matching
// over mutually acceptable pairs and keep the pairwise-stable ones. Stability
// is decided here by direct rank comparisons, independent of the engine's
// choice-set evaluation, so the two can cross-check each other.
#pragma once

#include <vector>

#include "edgecache/matching.hpp"

namespace edgecache::matching {

// Throws std::invalid_argument when the instance has more than 20 mutually
// acceptable pairs (the enumeration is exponential in that count).
std::vector<Matching> enumerate_pairwise_stable(
    const std::vector<PreferenceOrder>& proposer_prefs,
    const std::vector<PreferenceOrder>& receiver_prefs);

}  // namespace edgecache::matching
