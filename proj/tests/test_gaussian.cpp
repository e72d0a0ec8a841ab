#include <doctest.h>

#include <cmath>
#include <limits>

#include "arrowkit/errors.hpp"
#include "arrowkit/gaussian.hpp"

using namespace arrowkit;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(normal_quantile(0.0) == -kInf);
  CHECK(normal_quantile(1.0) == kInf);
  // past |x| ~ 5 the rounding of p near 1 dominates any quantile error
  for (double x = -5.0; x <= 5.0; x += 0.25)
    CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-9));
  CHECK(normal_upper_tail(-kInf) == 1.0);
  CHECK(normal_upper_tail(kInf) == 0.0);
}

TEST_CASE("pair agreement quadrature vs closed forms") {
  CHECK(pair_agreement(0.0, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(pair_agreement(0.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  for (double rho = -0.95; rho <= 0.951; rho += 0.1)
    CHECK(std::abs(pair_agreement(0.0, 0.0, rho) - pair_agreement_zero_closed(rho)) <= 1e-12);
  CHECK(pair_agreement(0.0, 0.0, -1.0 / 3.0) ==
        doctest::Approx(0.1959132760153036).epsilon(1e-12));

  // product form at rho = 0
  CHECK(pair_agreement(0.7, -1.2, 0.0) ==
        doctest::Approx(normal_upper_tail(0.7) * normal_upper_tail(-1.2)).epsilon(1e-12));
  // infinities are exact
  CHECK(pair_agreement(-kInf, 0.3, -0.4) == normal_upper_tail(0.3));
  CHECK(pair_agreement(kInf, 0.3, -0.4) == 0.0);
  // symmetry in the two coordinates
  CHECK(pair_agreement(0.4, -0.9, -0.3) == doctest::Approx(pair_agreement(-0.9, 0.4, -0.3)).epsilon(1e-11));
}

TEST_CASE("triple sampler moments") {
  RandomStream stream(7);
  const std::uint64_t draws = 1000000;

  const auto correlations = [&](double rho) {
    GaussianTripleSpec spec{1, rho};
    double c12 = 0, c23 = 0, c31 = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const GaussianTriple t = sample_triple(spec, stream);
      c12 += t.first[0] * t.second[0];
      c23 += t.second[0] * t.third[0];
      c31 += t.third[0] * t.first[0];
    }
    return std::array<double, 3>{c12 / draws, c23 / draws, c31 / draws};
  };

  // 5 sigma for a product of standard normals: var ~ 1 + rho^2 <= 2
  const double tol = 5.0 * std::sqrt(2.0 / static_cast<double>(draws));
  for (const double rho : {0.0, -1.0 / 3.0}) {
    const auto c = correlations(rho);
    CHECK(std::abs(c[0] - rho) <= tol);
    CHECK(std::abs(c[1] - rho) <= tol);
    CHECK(std::abs(c[2] - rho) <= tol);
  }

  // degenerate boundary: the three coordinates sum to zero
  GaussianTripleSpec boundary{4, -0.5};
  for (int i = 0; i < 100; ++i) {
    const GaussianTriple t = sample_triple(boundary, stream);
    CHECK((t.first + t.second + t.third).abs().maxCoeff() <= 1e-12);
  }

  CHECK_THROWS_AS(sample_triple(GaussianTripleSpec{1, -0.6}, stream), Error);
}

TEST_CASE("gaussian paradox probability closed forms") {
  const ThresholdFunction zero{0.0};
  const double guilbaud = 0.25 - 3.0 / (2.0 * kPi) * std::asin(1.0 / 3.0);
  CHECK(gaussian_paradox_probability(zero, zero, zero, -1.0 / 3.0) ==
        doctest::Approx(guilbaud).epsilon(1e-12));
  CHECK(gaussian_paradox_probability(zero, zero, zero, 0.0) == doctest::Approx(0.25).epsilon(1e-12));

  // one function constant +1: agreement needs the other two positive
  const ThresholdFunction top{-kInf};
  const double p = gaussian_paradox_probability(top, zero, zero, -1.0 / 3.0);
  const double expect =
      0.25 * (1.0 + 2.0 * 0.0 + 2.0 / kPi * std::asin(-1.0 / 3.0));
  CHECK(p == doctest::Approx(expect).epsilon(1e-11));
  CHECK(p >= 0.0);

  // strictly monotone in rho on [-1/2, 0] at zero thresholds: the arcsin
  // form runs from 0 at the PSD boundary up to 1/4 at independence
  CHECK(gaussian_paradox_probability(zero, zero, zero, -0.5) ==
        doctest::Approx(0.0).epsilon(1e-12));
  double last = -1.0;
  for (double rho = -0.5; rho <= 0.0; rho += 0.05) {
    const double value = gaussian_paradox_probability(zero, zero, zero, rho);
    CHECK(value >= last - 1e-12);
    last = value;
  }
}

TEST_CASE("closed form matches Monte Carlo at ten million samples") {
  const ThresholdFunction zero{0.0};
  const double closed = gaussian_paradox_probability(zero, zero, zero, -1.0 / 3.0);
  const Estimate mc = gaussian_paradox_mc(zero, zero, zero, -1.0 / 3.0, 10000000, 4242, 2);
  CHECK(std::abs(mc.mean - closed) <= 4.0 * mc.stderr_value);
}

TEST_CASE("gaussian Arrow bound check") {
  const ThresholdFunction zero{0.0};
  // zero-threshold pairs disagree with probability ~0.304, so the
  // hypothesis holds comfortably at epsilon = 1/2
  const GaussianArrowReport ok = check_gaussian_arrow_bound(zero, zero, zero, -1.0 / 3.0, 0.5);
  CHECK(ok.hypothesis_ok);
  CHECK(ok.worst_disagreement == doctest::Approx(0.5 - pair_agreement_zero_closed(-1.0 / 3.0)));
  CHECK(ok.meets_bound);
  // at epsilon = 1 the same paradox value still clears (1/2)^18, though
  // the hypothesis itself is out of reach for non-constant thresholds
  const GaussianArrowReport eps_one =
      check_gaussian_arrow_bound(zero, zero, zero, -1.0 / 3.0, 1.0, false);
  CHECK_FALSE(eps_one.hypothesis_ok);
  CHECK(eps_one.paradox >= std::pow(0.5, 18.0));

  // heavily shifted thresholds break the hypothesis
  CHECK_THROWS_AS(check_gaussian_arrow_bound(ThresholdFunction{-10.0}, ThresholdFunction{10.0},
                                             zero, -1.0 / 3.0, 0.5),
                  Error);
  const GaussianArrowReport bad = check_gaussian_arrow_bound(
      ThresholdFunction{-10.0}, ThresholdFunction{10.0}, zero, -1.0 / 3.0, 0.5, false);
  CHECK_FALSE(bad.hypothesis_ok);

  // random triples that satisfy the hypothesis never violate the bound
  RandomStream stream(17);
  int accepted = 0;
  while (accepted < 100) {
    const ThresholdFunction f1{1.5 * stream.next_normal()};
    const ThresholdFunction f2{1.5 * stream.next_normal()};
    const ThresholdFunction f3{1.5 * stream.next_normal()};
    const GaussianArrowReport r = check_gaussian_arrow_bound(f1, f2, f3, -1.0 / 3.0, 0.5, false);
    if (!r.hypothesis_ok) continue;
    ++accepted;
    CHECK(r.meets_bound);
  }
}

TEST_CASE("hypercube vs gaussian drift") {
  // dictators: cube correlation rho, gaussian counterpart (2/pi) asin rho
  const BooleanFunction dict = BooleanFunction::dictator(3, 1);
  const DriftReport d = hypercube_vs_gaussian_drift(dict, dict, -1.0 / 3.0);
  CHECK(d.cube_value == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(d.gaussian_value == doctest::Approx(2.0 / kPi * std::asin(-1.0 / 3.0)).epsilon(1e-11));
  CHECK(d.max_influence == doctest::Approx(1.0));

  // the DP path agrees with the dense-table path on small majorities
  for (const int n : {1, 3, 5, 7}) {
    const BooleanFunction maj = BooleanFunction::majority(n);
    const DriftReport dense = hypercube_vs_gaussian_drift(maj, maj, -1.0 / 3.0);
    const DriftReport dp = majority_drift(n, -1.0 / 3.0);
    CHECK(dp.cube_value == doctest::Approx(dense.cube_value).epsilon(1e-12));
    CHECK(dp.max_influence == doctest::Approx(influence(maj, 0)).epsilon(1e-12));
  }

  // rho = 0: mean-matched thresholds give a vanishing gap
  const BooleanFunction maj5 = BooleanFunction::majority(5);
  CHECK(hypercube_vs_gaussian_drift(maj5, maj5, 0.0).gap <= 1e-9);

  // drift shrinks along 3 -> 11 -> 31 at rho = -1/3
  const double g3 = majority_drift(3, -1.0 / 3.0).gap;
  const double g11 = majority_drift(11, -1.0 / 3.0).gap;
  const double g31 = majority_drift(31, -1.0 / 3.0).gap;
  CHECK(g11 < g3);
  CHECK(g31 < g11);
}
