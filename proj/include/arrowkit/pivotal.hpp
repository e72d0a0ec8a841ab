#pragma once

#include <cstdint>
#include <optional>

#include "arrowkit/boolfn.hpp"
#include "arrowkit/constitution.hpp"

namespace arrowkit {

// Assignment of the other n-1 bits at which flipping `voter` changes the
// function. Bit j of `others` is the j-th remaining voter in index order.
struct PivotWitness {
  int voter = 0;
  std::uint64_t others = 0;
};

// Full-table index with the witness's `others` spread out and the pivot
// voter's bit set to `voter_bit`.
std::uint64_t witness_index(const PivotWitness& w, int n, bool voter_bit);

// Lowest-`others` witness, or nothing when the voter has zero influence.
std::optional<PivotWitness> find_pivot(const BooleanFunction& f, int voter);

// Barbera's explicit paradox profile for k = 3: w1 must witness pivotality
// of its voter for f^{a>b}, w2 for f^{b>c}, on distinct voters. The result
// is verified non-transitive before returning.
Profile barbera_construct(const Constitution& c, const PivotWitness& w1, const PivotWitness& w2);

// P[voter i pivotal for f^{a>b} and voter j pivotal for f^{b>c}] over
// mu^n. Spectral route when the pair marginals are unbiased, otherwise
// profile enumeration under the budget.
ProbValue joint_pivotal_probability(const Constitution& c, int i, int j,
                                    const VoteDistribution& mu,
                                    const EnumerationOptions& opts = {});

// Enumeration-only variant; the test oracle for the spectral route.
ProbValue joint_pivotal_probability_enumerated(const Constitution& c, int i, int j,
                                               const VoteDistribution& mu,
                                               const EnumerationOptions& opts = {});

struct TwoInfluentialReport {
  double epsilon = 0.0;  // max over distinct voters/functions of min influence
  ProbValue paradox;
  double bound = 0.0;    // alpha^2 epsilon^{1/(2 alpha)}
  double alpha = 0.0;
  bool vacuous = false;  // epsilon or alpha is zero
  bool holds = true;
  const char* paradox_path = "enumeration";  // or "kalai"
};

// Two-influential-voters lower bound on the paradox probability; never
// reports a violation on correct inputs.
TwoInfluentialReport check_two_influential_bound(const Constitution& c,
                                                 const VoteDistribution& mu,
                                                 const EnumerationOptions& opts = {});

}  // namespace arrowkit
