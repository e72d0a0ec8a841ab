#pragma once

#include <cstdint>
#include <vector>

#include "arrowkit/constitution.hpp"
#include "arrowkit/family.hpp"
#include "arrowkit/hyper.hpp"
#include "arrowkit/vote_distribution.hpp"

namespace arrowkit {

// Randomized zero-violation suites behind the `bounds` subcommand and the
// acceptance gate. All draws derive from the seed, so runs repeat bit for
// bit.

struct SuiteOptions {
  std::uint64_t instances = 1000;
  int n_min = 2;
  int n_max = 8;
  std::uint64_t seed = 1;
  EnumerationOptions enumeration;
};

struct BoundSuiteReport {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double min_slack = 0.0;  // computed - bound, minimized over instances
};

// Joint pivotality >= min(I_i f^{a>b}, I_j f^{b>c})^{1/(2 alpha)} on
// random constitutions under mu.
BoundSuiteReport joint_pivotality_suite(const SuiteOptions& opts, const VoteDistribution& mu);

// P(F) >= alpha^2 eps^{1/(2 alpha)} with eps the best two-voter influence
// split, on random constitutions under mu.
BoundSuiteReport two_influential_suite(const SuiteOptions& opts, const VoteDistribution& mu);

struct ProjectionSuiteReport {
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  double max_distance = 0.0;
  std::uint64_t flipped_entries = 0;  // total perturbation kept after the gate
};

// Perturbed dictators under the paradox gate P(F) < (1/36) eps^3 n^-3,
// projected back onto the family; fails when the result leaves the family
// or lands farther than 10 eps.
ProjectionSuiteReport dictator_projection_suite(std::uint64_t instances, const std::vector<double>& epsilons,
                                      const std::vector<int>& voter_counts, std::uint64_t seed,
                                      const EnumerationOptions& opts = {});

enum class SetFamily { random, balls, subcubes };

struct ReverseHcInstance {
  double measure1, measure2, intersection, bound, slack;
};

struct ReverseHcSuiteReport {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double min_slack = 0.0;
  std::vector<ReverseHcInstance> rows;  // filled when keep_rows
};

ReverseHcSuiteReport reverse_hc_suite(std::uint64_t pairs, int n, double rho, SetFamily family,
                                      std::uint64_t seed, bool keep_rows = false);

}  // namespace arrowkit
