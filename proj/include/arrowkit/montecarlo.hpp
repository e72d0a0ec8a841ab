#pragma once

#include <cstdint>

#include "arrowkit/constitution.hpp"
#include "arrowkit/estimate.hpp"
#include "arrowkit/vote_distribution.hpp"

namespace arrowkit {

// Seeded estimators for when enumeration budgets run out. Samples are
// pre-assigned to counter-derived substreams in fixed-size blocks, so a
// given seed yields the same estimate for every thread count.

Estimate estimate_paradox(const Constitution& c, const VoteDistribution& mu,
                          std::uint64_t samples, std::uint64_t seed, int threads = 1);

Estimate estimate_distance(const Constitution& f, const Constitution& g,
                           const VoteDistribution& mu, std::uint64_t samples, std::uint64_t seed,
                           int threads = 1);

// Simple-majority constitution on any odd number of voters; covers sizes
// far past the dense-table cap.
Estimate estimate_majority_paradox(int k, int n_voters, const VoteDistribution& mu,
                                   std::uint64_t samples, std::uint64_t seed, int threads = 1);

}  // namespace arrowkit
