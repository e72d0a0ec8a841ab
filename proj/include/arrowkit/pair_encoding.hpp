#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "arrowkit/rational.hpp"
#include "arrowkit/ranking.hpp"
#include "arrowkit/vote_distribution.hpp"

namespace arrowkit {

// Ordered alternative pair (first, second); the +1 side of the encoding
// is "first ranked above second".
using AltPair = std::pair<int, int>;

struct PairEncoding {
  AltPair pair;
  std::vector<std::int8_t> bits;  // one sign per voter

  // Packed view, bit i set iff voter i's sign is +1. Requires n <= 64.
  std::uint64_t mask() const;
};

// bits[i] = +1 iff voter i ranks a above b.
PairEncoding encode_pair(const Profile& profile, int a, int b);

// Sign of x^{pair} for a single ranking.
int pair_sign(const Ranking& r, const AltPair& pair);

// Single-voter expectation E[x^{p1} x^{p2}] under mu.
Rational pair_correlation_exact(const VoteDistribution& mu, const AltPair& p1, const AltPair& p2);
double pair_correlation(const VoteDistribution& mu, const AltPair& p1, const AltPair& p2);

// Single-voter marginal E[x^{pair}]; zero for every symmetric mu.
Rational pair_marginal_exact(const VoteDistribution& mu, const AltPair& pair);
double pair_marginal(const VoteDistribution& mu, const AltPair& pair);

// L2 norm of E[x^{target} | x^{given1}, x^{given2}] under mu. The three
// pairs must involve exactly three distinct alternatives.
double conditional_l2(const VoteDistribution& mu, const AltPair& target,
                      const AltPair& given1, const AltPair& given2);
Rational conditional_l2_squared_exact(const VoteDistribution& mu, const AltPair& target,
                                      const AltPair& given1, const AltPair& given2);

}  // namespace arrowkit
