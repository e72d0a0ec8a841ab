#include <doctest.h>

#include <cmath>

#include "arrowkit/errors.hpp"
#include "arrowkit/gaussian.hpp"
#include "arrowkit/montecarlo.hpp"

using namespace arrowkit;

TEST_CASE("paradox estimates against exact oracles") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);

  const Estimate dict =
      estimate_paradox(Constitution::dictator(3, 5, 2), uniform, 20000, 1);
  CHECK(dict.mean == 0.0);

  const Estimate maj = estimate_paradox(Constitution::majority(3, 3), uniform, 1000000, 2);
  CHECK(std::abs(maj.mean - 1.0 / 18.0) <= 4.0 * maj.stderr_value);

  CHECK_THROWS_AS(estimate_paradox(Constitution::majority(3, 3), uniform, 999, 1), Error);
}

TEST_CASE("distance estimates") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const Constitution f = Constitution::dictator(3, 16, 0);
  const Constitution g = Constitution::dictator(3, 16, 7);

  CHECK(estimate_distance(f, f, uniform, 10000, 3).mean == 0.0);

  // two distinct dictators disagree iff the two voters' rankings differ:
  // exactly 5/6 at any n (the n = 2 enumeration fixes the value)
  const Estimate d = estimate_distance(f, g, uniform, 400000, 4);
  CHECK(std::abs(d.mean - 5.0 / 6.0) <= 4.0 * d.stderr_value);

  // triangle inequality within combined confidence intervals
  RandomStream stream(5);
  const Constitution a = Constitution::random(3, 6, stream);
  const Constitution b = Constitution::random(3, 6, stream);
  const Constitution c = Constitution::random(3, 6, stream);
  const Estimate ab = estimate_distance(a, b, uniform, 200000, 6);
  const Estimate bc = estimate_distance(b, c, uniform, 200000, 7);
  const Estimate ac = estimate_distance(a, c, uniform, 200000, 8);
  CHECK(ac.mean <= ab.mean + bc.mean + ab.half_width99 + bc.half_width99 + ac.half_width99);

  // exact triangle inequality on small instances
  const Constitution a2 = Constitution::random(3, 3, stream);
  const Constitution b2 = Constitution::random(3, 3, stream);
  const Constitution c2 = Constitution::random(3, 3, stream);
  CHECK(*distance(a2, c2, uniform).exact <=
        *distance(a2, b2, uniform).exact + *distance(b2, c2, uniform).exact);
}

TEST_CASE("estimates agree with exact enumeration when both run") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  RandomStream stream(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Constitution c = Constitution::random(3, 4, stream);
    const double exact = paradox_probability_exact(c, uniform).value;
    const Estimate mc = estimate_paradox(c, uniform, 200000, 100 + trial);
    CHECK(std::abs(mc.mean - exact) <= 4.0 * std::max(mc.stderr_value, 1e-6));
  }
}

TEST_CASE("majority estimator approaches the Gaussian limit") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const double limit = 0.25 - 3.0 / (2.0 * 3.14159265358979323846) * std::asin(1.0 / 3.0);
  const Estimate big = estimate_majority_paradox(3, 1001, uniform, 100000, 11, 2);
  CHECK(std::abs(big.mean - limit) <= 0.01);

  // small case against enumeration
  const Estimate small = estimate_majority_paradox(3, 3, uniform, 400000, 12);
  CHECK(std::abs(small.mean - 1.0 / 18.0) <= 4.0 * small.stderr_value);

  CHECK_THROWS_AS(estimate_majority_paradox(3, 4, uniform, 10000, 1), Error);
}

TEST_CASE("determinism: thread count never changes an estimate") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const Constitution maj = Constitution::majority(3, 5);
  const Estimate t1 = estimate_paradox(maj, uniform, 250000, 77, 1);
  const Estimate t4 = estimate_paradox(maj, uniform, 250000, 77, 4);
  CHECK(t1.mean == t4.mean);
  CHECK(t1.stderr_value == t4.stderr_value);

  const Estimate g1 = gaussian_paradox_mc(ThresholdFunction{0}, ThresholdFunction{0},
                                          ThresholdFunction{0}, -1.0 / 3.0, 250000, 77, 1);
  const Estimate g3 = gaussian_paradox_mc(ThresholdFunction{0}, ThresholdFunction{0},
                                          ThresholdFunction{0}, -1.0 / 3.0, 250000, 77, 3);
  CHECK(g1.mean == g3.mean);

  // different seeds move the sample set
  const Estimate other = estimate_paradox(maj, uniform, 250000, 78, 1);
  CHECK(other.mean != t1.mean);
}

TEST_CASE("confidence interval calibration") {
  // 100 repetitions of a known-truth experiment: the 99% interval covers
  // at least 95 times
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const Constitution maj = Constitution::majority(3, 3);
  const double truth = 1.0 / 18.0;
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const Estimate e = estimate_paradox(maj, uniform, 20000, 1000 + rep);
    if (std::abs(e.mean - truth) <= e.half_width99) ++covered;
  }
  CHECK(covered >= 95);
}
