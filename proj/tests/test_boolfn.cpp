#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "arrowkit/boolfn.hpp"
#include "arrowkit/errors.hpp"
#include "arrowkit/rng.hpp"

using namespace arrowkit;

namespace {

// Independent oracle: coefficient by direct expectation over all inputs.
double direct_coeff(const BoundedFunction& f, std::uint64_t subset) {
  double sum = 0.0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    int chi = 1;
    for (int i = 0; i < f.n(); ++i)
      if ((subset >> i) & 1) chi *= ((x >> i) & 1) ? 1 : -1;
    sum += f.value(x) * chi;
  }
  return sum / static_cast<double>(f.size());
}

// Independent oracle: E[f(X) g(Y)] by joint enumeration with
// P[(s,t)] = (1 + s t rho_i) / 4 per coordinate.
double direct_correlated(const BoundedFunction& f, const BoundedFunction& g,
                         const std::vector<double>& rho) {
  double total = 0.0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    for (std::uint64_t y = 0; y < g.size(); ++y) {
      double w = 1.0;
      for (int i = 0; i < f.n(); ++i) {
        const int s = ((x >> i) & 1) ? 1 : -1;
        const int t = ((y >> i) & 1) ? 1 : -1;
        w *= (1.0 + s * t * rho[static_cast<std::size_t>(i)]) / 4.0;
      }
      total += w * f.value(x) * g.value(y);
    }
  return total;
}

BoundedFunction random_bounded(int n, RandomStream& stream) {
  Eigen::ArrayXd values(Eigen::Index(1) << n);
  for (Eigen::Index i = 0; i < values.size(); ++i) values[i] = 2.0 * stream.next_unit() - 1.0;
  return BoundedFunction(n, std::move(values));
}

}  // namespace

TEST_CASE("fwht on the named small functions") {
  const FourierExpansion c1 = fwht(BoundedFunction::constant(3, 1.0));
  CHECK(c1.coeff(0) == doctest::Approx(1.0).epsilon(1e-14));
  for (std::uint64_t s = 1; s < 8; ++s) CHECK(c1.coeff(s) == doctest::Approx(0.0).epsilon(1e-14));

  const FourierExpansion d = fwht(BooleanFunction::dictator(4, 1));
  for (std::uint64_t s = 0; s < 16; ++s)
    CHECK(d.coeff(s) == doctest::Approx(s == 0b10 ? 1.0 : 0.0).epsilon(1e-14));

  const FourierExpansion m = fwht(BooleanFunction::majority(3));
  CHECK(m.coeff(0b001) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.coeff(0b010) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.coeff(0b100) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.coeff(0b111) == doctest::Approx(-0.5).epsilon(1e-14));
  // cross-check every coefficient against the direct 8-point expectation
  const BoundedFunction mb = BooleanFunction::majority(3).to_bounded();
  for (std::uint64_t s = 0; s < 8; ++s)
    CHECK(m.coeff(s) == doctest::Approx(direct_coeff(mb, s)).epsilon(1e-13));
}

TEST_CASE("fwht inverse and Parseval on random tables") {
  RandomStream stream(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(stream.next_below(12));
    const BoundedFunction f = random_bounded(n, stream);
    const FourierExpansion e = fwht(f);
    CHECK(std::abs(e.coeffs.square().sum() - f.values().square().mean()) <= 1e-10);
    if (trial % 50 == 0) {
      const BoundedFunction back = inverse_fwht(e);
      CHECK((back.values() - f.values()).abs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("influence: definitions and spectral agreement") {
  const BooleanFunction par = BooleanFunction::parity(5);
  for (int i = 0; i < 5; ++i) CHECK(influence(par, i) == 1.0);

  const BooleanFunction dict = BooleanFunction::dictator(4, 0);
  CHECK(influence(dict, 0) == 1.0);
  for (int i = 1; i < 4; ++i) CHECK(influence(dict, i) == 0.0);

  const BooleanFunction maj = BooleanFunction::majority(3);
  for (int i = 0; i < 3; ++i) CHECK(influence_exact(maj, i) == Rational(1, 2));

  RandomStream stream(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(9));
    const BooleanFunction f = BooleanFunction::random(n, stream);
    const FourierExpansion e = fwht(f);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(influence(f, i) - spectral_influence(e, i)) <= 1e-12);
  }
}

TEST_CASE("low-degree influence") {
  const BoundedFunction maj = BooleanFunction::majority(3).to_bounded();
  CHECK(low_degree_influence(maj, 0, 1) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(low_degree_influence(maj, 0, 0) == 0.0);
  CHECK(low_degree_influence(maj, 0, 3) == doctest::Approx(influence(maj, 0)).epsilon(1e-13));

  RandomStream stream(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(7));
    const BoundedFunction f = random_bounded(n, stream);
    const FourierExpansion e = fwht(f);
    for (int d = 0; d <= n; ++d) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        total += low_degree_influence(e, i, d);
        if (d > 0)
          CHECK(low_degree_influence(e, i, d) >= low_degree_influence(e, i, d - 1) - 1e-15);
      }
      CHECK(total <= d * variance(e) + 1e-12);
    }
  }
}

TEST_CASE("noise operator") {
  RandomStream stream(41);
  const BoundedFunction f = random_bounded(6, stream);

  const BoundedFunction same = noise_operator(f, 1.0);
  CHECK((same.values() - f.values()).abs().maxCoeff() <= 1e-12);

  const BoundedFunction flat = noise_operator(f, 0.0);
  CHECK((flat.values() - f.mean()).abs().maxCoeff() <= 1e-12);

  const BoundedFunction half_dict = noise_operator(BooleanFunction::dictator(3, 0).to_bounded(), 0.5);
  for (std::uint64_t x = 0; x < 8; ++x)
    CHECK(half_dict.value(x) == doctest::Approx((x & 1) ? 0.5 : -0.5).epsilon(1e-13));

  // semigroup: T_a T_b = T_{ab}
  const BoundedFunction ab = noise_operator(noise_operator(f, 0.7), -0.4);
  const BoundedFunction prod = noise_operator(f, -0.28);
  CHECK((ab.values() - prod.values()).abs().maxCoeff() <= 1e-12);
  CHECK(ab.values().abs().maxCoeff() <= 1.0);
}

TEST_CASE("correlated expectation") {
  const BoundedFunction x0 = BooleanFunction::dictator(2, 0).to_bounded();
  CHECK(correlated_expectation(x0, x0, 0.37) == doctest::Approx(0.37).epsilon(1e-13));

  const BooleanFunction maj = BooleanFunction::majority(3);
  CHECK(correlated_expectation_exact(maj, maj, Rational(-1, 3)) == Rational(-7, 27));
  const BoundedFunction majb = maj.to_bounded();
  CHECK(correlated_expectation(majb, majb, -1.0 / 3.0) ==
        doctest::Approx(-7.0 / 27.0).epsilon(1e-13));
  // joint-enumeration oracle
  CHECK(direct_correlated(majb, majb, {-1.0 / 3, -1.0 / 3, -1.0 / 3}) ==
        doctest::Approx(-7.0 / 27.0).epsilon(1e-12));

  RandomStream stream(51);
  const BoundedFunction g = random_bounded(4, stream);
  CHECK(correlated_expectation(g, g, 1.0) ==
        doctest::Approx(g.values().square().mean()).epsilon(1e-12));

  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(stream.next_below(6));
    const BoundedFunction a = random_bounded(n, stream);
    const BoundedFunction b = random_bounded(n, stream);
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (double& r : rho) r = 2.0 * stream.next_unit() - 1.0;
    CHECK(std::abs(correlated_expectation(a, b, rho) - direct_correlated(a, b, rho)) <= 1e-10);
  }
}

TEST_CASE("averaging over coordinates") {
  const BoundedFunction maj = BooleanFunction::majority(3).to_bounded();
  CHECK((average_over_coords(maj, 0).values() - maj.values()).abs().maxCoeff() == 0.0);

  const BoundedFunction all = average_over_coords(maj, 0b111);
  CHECK((all.values() - maj.mean()).abs().maxCoeff() <= 1e-15);

  // averaging out the middle voter leaves +-1 on unanimous pairs, 0 on splits
  const BoundedFunction avg = average_over_coords(maj, 0b010);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const int s0 = (x & 0b001) ? 1 : -1;
    const int s2 = (x & 0b100) ? 1 : -1;
    CHECK(avg.value(x) == doctest::Approx(s0 == s2 ? s0 : 0.0).epsilon(1e-15));
  }

  RandomStream stream(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(6));
    const BoundedFunction f = random_bounded(n, stream);
    const std::uint64_t mask = stream.next_below(std::uint64_t(1) << n);
    const BoundedFunction g = average_over_coords(f, mask);
    CHECK(g.mean() == doctest::Approx(f.mean()).epsilon(1e-12));
    CHECK(g.values().abs().maxCoeff() <= 1.0 + 1e-15);
    for (int i = 0; i < n; ++i) CHECK(influence(g, i) <= influence(f, i) + 1e-12);
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) CHECK(influence(g, i) <= 1e-24);
  }
}

TEST_CASE("averaging drifts pair expectations by at most |S| sqrt(eps)") {
  RandomStream stream(71);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(9));
    const BoundedFunction f1 = random_bounded(n, stream);
    const BoundedFunction f2 = random_bounded(n, stream);
    const std::uint64_t mask =
        stream.next_below(std::uint64_t(1) << n) & stream.next_below(std::uint64_t(1) << n);
    const double rho = 2.0 * stream.next_unit() - 1.0;

    double eps = 0.0;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) eps = std::max(eps, std::min(influence(f1, i), influence(f2, i)));
    const double set_size = static_cast<double>(std::popcount(mask));

    const double before = correlated_expectation(f1, f2, rho);
    const double after = correlated_expectation(average_over_coords(f1, mask),
                                                average_over_coords(f2, mask), rho);
    CHECK(std::abs(before - after) <= set_size * std::sqrt(eps) + 1e-9);
  }
}

TEST_CASE("nearest simple candidate") {
  const NearestSimple exact = nearest_simple(BooleanFunction::dictator(4, 2));
  CHECK(exact.candidate.kind == SimpleCandidate::Kind::dictator);
  CHECK(exact.candidate.voter == 2);
  CHECK(exact.distance == Rational(0));

  const NearestSimple flipped = nearest_simple(BooleanFunction::constant(3, 1).with_flipped_entry(5));
  CHECK(flipped.candidate.kind == SimpleCandidate::Kind::constant);
  CHECK(flipped.candidate.sign == 1);
  CHECK(flipped.distance == Rational(1, 8));

  // tie between constant +1 and x_0 resolves to the constant
  const BooleanFunction tie(2, {1, 1, -1, 1});
  const NearestSimple t = nearest_simple(tie);
  CHECK(t.candidate.kind == SimpleCandidate::Kind::constant);
  CHECK(t.distance == Rational(1, 4));

  // low influences force closeness to a constant: D <= 2 eps with
  // eps = n max_i I_i
  RandomStream stream(81);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(8));
    BooleanFunction f = BooleanFunction::constant(n, 1);
    const std::uint64_t flips = stream.next_below(4);
    for (std::uint64_t i = 0; i < flips; ++i)
      f = f.with_flipped_entry(stream.next_below(f.size()));
    double max_inf = 0.0;
    for (int i = 0; i < n; ++i) max_inf = std::max(max_inf, influence(f, i));
    // distance to the better constant is min(P[f = 1], P[f = -1])
    const double best_const = std::min(0.5 * (1.0 - f.mean()), 0.5 * (1.0 + f.mean()));
    CHECK(best_const <= 2.0 * n * max_inf + 1e-12);
    CHECK(to_double(nearest_simple(f).distance) <= best_const + 1e-12);
  }
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(BooleanFunction(2, {1, 1, 1}), Error);
  CHECK_THROWS_AS(BooleanFunction(2, {1, 1, 0, 1}), Error);
  CHECK_THROWS_AS(BoundedFunction(1, [] {
                    Eigen::ArrayXd v(2);
                    v << 0.5, 1.5;
                    return v;
                  }()),
                  Error);
  CHECK_THROWS_AS(table_size_checked(26), Error);
  CHECK_THROWS_AS(BooleanFunction::majority(4), Error);
}
