#include <doctest.h>

#include <array>
#include <cmath>

#include "arrowkit/constitution.hpp"
#include "arrowkit/errors.hpp"

using namespace arrowkit;

namespace {

VoteDistribution symmetric_weights(std::uint64_t w0, std::uint64_t w1, std::uint64_t w2) {
  const std::uint64_t total = 2 * (w0 + w1 + w2);
  std::vector<Rational> probs{Rational(w0, total), Rational(w1, total), Rational(w2, total),
                              Rational(w1, total), Rational(w2, total), Rational(w0, total)};
  return VoteDistribution::from_rationals(3, std::move(probs));
}

Profile profile_from_orders(std::initializer_list<std::array<int, 3>> orders) {
  std::vector<Ranking> voters;
  for (const auto& o : orders) voters.push_back(Ranking::from_order(o));
  return Profile(std::move(voters));
}

}  // namespace

TEST_CASE("evaluate on the fixed constitutions") {
  const Constitution dict = Constitution::dictator(3, 3, 0);
  const Profile p = profile_from_orders({{1, 0, 2}, {2, 1, 0}, {0, 1, 2}});
  const OutcomeTournament t = evaluate(dict, p);
  CHECK(is_transitive(t));
  CHECK(tournament_order(t) == p.voters[0]);

  const Ranking fixed = Ranking::from_order(std::array{0, 1, 2});
  const Constitution constant = Constitution::constant(fixed, 3);
  CHECK(tournament_order(evaluate(constant, p)) == fixed);

  // the classic Condorcet profile cycles under majority
  const Constitution maj = Constitution::majority(3, 3);
  const Profile condorcet = profile_from_orders({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  const OutcomeTournament cycle = evaluate(maj, condorcet);
  CHECK(cycle.sign(0, 1) == 1);
  CHECK(cycle.sign(1, 2) == 1);
  CHECK(cycle.sign(2, 0) == 1);
  CHECK_FALSE(is_transitive(cycle));
}

TEST_CASE("tournament transitivity") {
  OutcomeTournament order;
  order.k = 3;
  order.prefers = {1, 1, 1};  // a>b, a>c, b>c
  CHECK(is_transitive(order));

  OutcomeTournament cycle;
  cycle.k = 3;
  cycle.prefers = {1, -1, 1};  // a>b, c>a, b>c
  CHECK_FALSE(is_transitive(cycle));

  // k = 4 tournament with a 3-cycle on {0,1,2}, alternative 3 at the bottom
  OutcomeTournament embedded;
  embedded.k = 4;
  embedded.prefers.assign(static_cast<std::size_t>(pair_count(4)), 1);
  embedded.prefers[static_cast<std::size_t>(pair_index(4, 0, 2))] = -1;
  CHECK_FALSE(is_transitive(embedded));
}

TEST_CASE("exact paradox probabilities") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);

  const ProbValue maj = paradox_probability_exact(Constitution::majority(3, 3), uniform);
  REQUIRE(maj.is_exact());
  CHECK(*maj.exact == Rational(1, 18));

  const ProbValue dict = paradox_probability_exact(Constitution::dictator(3, 4, 1), uniform);
  CHECK(*dict.exact == Rational(0));

  // all three cyclic functions constant +1: every profile cycles
  const Constitution everything_cycles = Constitution::from_cyclic(
      BooleanFunction::constant(2, 1), BooleanFunction::constant(2, 1),
      BooleanFunction::constant(2, 1));
  const ProbValue one = paradox_probability_exact(everything_cycles, uniform);
  CHECK(*one.exact == Rational(1));
}

TEST_CASE("Kalai's formula matches enumeration") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);

  CHECK(*paradox_probability_kalai(Constitution::dictator(3, 2, 0), uniform).exact == Rational(0));
  CHECK(*paradox_probability_kalai(Constitution::majority(3, 3), uniform).exact ==
        Rational(1, 18));

  // same parity function on all three cyclic slots:
  // P = (1 + 3 (-1/3)^n) / 4, checked against enumeration
  for (int n = 1; n <= 5; ++n) {
    const BooleanFunction par = BooleanFunction::parity(n);
    const Constitution c = Constitution::from_cyclic(par, par, par);
    const ProbValue spectral = paradox_probability_kalai(c, uniform);
    const ProbValue exact = paradox_probability_exact(c, uniform);
    REQUIRE(spectral.is_exact());
    CHECK(*spectral.exact == *exact.exact);
    const Rational rho_pow(big_pow(BigInt(-1), static_cast<unsigned>(n)),
                           big_pow(BigInt(3), static_cast<unsigned>(n)));
    CHECK(*spectral.exact == (1 + 3 * rho_pow) / 4);
  }

  // random constitutions, uniform and symmetric rational mu: exact equality
  RandomStream stream(13);
  const VoteDistribution skew = symmetric_weights(1, 2, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(stream.next_below(4));
    const Constitution c = Constitution::random(3, n, stream);
    for (const VoteDistribution* mu : {&uniform, &skew}) {
      const ProbValue spectral = paradox_probability_kalai(c, *mu);
      const ProbValue exact = paradox_probability_exact(c, *mu);
      REQUIRE(spectral.is_exact());
      CHECK(*spectral.exact == *exact.exact);
    }
  }

  // float-mode distributions agree to 1e-10
  Eigen::ArrayXd real_probs(6);
  real_probs << 0.1, 0.15, 0.25, 0.15, 0.25, 0.1;
  const VoteDistribution real_mu = VoteDistribution::from_reals(3, real_probs);
  for (int trial = 0; trial < 20; ++trial) {
    const Constitution c = Constitution::random(3, 3, stream);
    CHECK(std::abs(paradox_probability_kalai(c, real_mu).value -
                   paradox_probability_exact(c, real_mu).value) <= 1e-10);
  }

  CHECK_THROWS_AS(paradox_probability_kalai(Constitution::dictator(4, 2, 0),
                                            VoteDistribution::uniform(4)),
                  Error);
  CHECK_THROWS_AS(paradox_probability_kalai(Constitution::majority(3, 3),
                                            VoteDistribution::point_mass(Ranking({0, 1, 2}))),
                  Error);
}

TEST_CASE("statistical distance") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const Constitution d0 = Constitution::dictator(3, 2, 0);
  const Constitution d1 = Constitution::dictator(3, 2, 1);

  CHECK(*distance(d0, d0, uniform).exact == Rational(0));
  CHECK(*distance(d0, d1, uniform).exact == Rational(5, 6));

  // union bound: D(F, G) <= sum over pairs of per-table disagreement
  RandomStream stream(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(stream.next_below(3));
    const Constitution f = Constitution::random(3, n, stream);
    const Constitution g = Constitution::random(3, n, stream);
    Rational pair_sum = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        std::uint64_t mismatch = 0;
        for (std::uint64_t x = 0; x < f.pair_fn(a, b).size(); ++x)
          if (f.pair_fn(a, b).sign(x) != g.pair_fn(a, b).sign(x)) ++mismatch;
        pair_sum += Rational(mismatch, f.pair_fn(a, b).size());
      }
    CHECK(*distance(f, g, uniform).exact <= pair_sum);
  }
}

TEST_CASE("restriction") {
  const Constitution dict4 = Constitution::dictator(4, 3, 1);
  const std::array<int, 4> all{0, 1, 2, 3};
  CHECK(restrict(dict4, all) == dict4);

  const std::array<int, 3> abc{0, 1, 2};
  CHECK(restrict(dict4, abc) == Constitution::dictator(3, 3, 1));

  CHECK_THROWS_AS(restrict(dict4, std::array<int, 1>{0}), Error);

  // P(F_A) <= P(F) for every 3-subset
  const VoteDistribution u4 = VoteDistribution::uniform(4);
  const VoteDistribution u3 = VoteDistribution::uniform(3);
  RandomStream stream(37);
  for (int trial = 0; trial < 10; ++trial) {
    const Constitution f = Constitution::random(4, 2, stream);
    const Rational whole = *paradox_probability_exact(f, u4).exact;
    for (const auto& subset : {std::array<int, 3>{0, 1, 2}, std::array<int, 3>{0, 1, 3},
                               std::array<int, 3>{0, 2, 3}, std::array<int, 3>{1, 2, 3}}) {
      const Rational part = *paradox_probability_exact(restrict(f, subset), u3).exact;
      CHECK(part <= whole);
    }
  }
}

TEST_CASE("conditional restriction") {
  const Ranking abc({0, 1, 2});

  const Constitution dict0 = Constitution::dictator(3, 3, 0);
  const Constitution fixed = conditional_restriction(dict0, 0, abc);
  CHECK(fixed == Constitution::constant(abc, 2));

  const Constitution dict2 = Constitution::dictator(3, 3, 2);
  CHECK(conditional_restriction(dict2, 0, abc) == Constitution::dictator(3, 2, 1));

  // majority with one voter pinned to abc: the cycle a>b, b>c, c>a
  // survives exactly on the free-voter profiles (cab, bca) and
  // (bca, cab), so the restricted paradox probability is 2/36
  const Constitution maj = Constitution::majority(3, 3);
  const Constitution pinned = conditional_restriction(maj, 1, abc);
  CHECK(*paradox_probability_exact(pinned, VoteDistribution::uniform(3)).exact == Rational(1, 18));
  const Profile cycling({Ranking::from_order(std::array{2, 0, 1}),
                         Ranking::from_order(std::array{1, 2, 0})});
  CHECK_FALSE(is_transitive(evaluate(pinned, cycling)));
}

TEST_CASE("paradox and transitive probabilities are exact complements") {
  RandomStream stream(43);
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const VoteDistribution skew = symmetric_weights(2, 1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(stream.next_below(3));
    const Constitution c = Constitution::random(3, n, stream);
    for (const VoteDistribution* mu : {&uniform, &skew}) {
      const Rational paradox = *paradox_probability_exact(c, *mu).exact;
      // enumerate the complementary event independently
      const auto transitive_pred = [&](std::span<const std::uint64_t> masks) {
        const int s01 = c.pair_fns()[0].sign(masks[0]);
        const int s02 = c.pair_fns()[1].sign(masks[1]);
        const int s12 = c.pair_fns()[2].sign(masks[2]);
        return !(s01 == s12 && s01 == -s02);
      };
      const Rational transitive =
          *detail::weighted_profile_probability(3, n, *mu, {}, transitive_pred).exact;
      CHECK(paradox + transitive == 1);
      CHECK(paradox >= 0);
      CHECK(paradox <= 1);
    }
  }
}

TEST_CASE("budget guard and thread determinism") {
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const Constitution maj = Constitution::majority(3, 5);

  CHECK_THROWS_AS(paradox_probability_exact(Constitution::majority(3, 11), uniform,
                                            EnumerationOptions{1e8, 1}),
                  BudgetError);
  try {
    paradox_probability_exact(maj, uniform, EnumerationOptions{100.0, 1});
    CHECK(false);
  } catch (const BudgetError& e) {
    CHECK(e.required_states() == doctest::Approx(std::pow(6.0, 5)));
  }

  const ProbValue serial = paradox_probability_exact(maj, uniform, EnumerationOptions{1e8, 1});
  const ProbValue parallel = paradox_probability_exact(maj, uniform, EnumerationOptions{1e8, 4});
  CHECK(*serial.exact == *parallel.exact);

  Eigen::ArrayXd real_probs(6);
  real_probs << 0.3, 0.1, 0.1, 0.1, 0.1, 0.3;
  const VoteDistribution real_mu = VoteDistribution::from_reals(3, real_probs);
  const double v1 = paradox_probability_exact(maj, real_mu, EnumerationOptions{1e8, 1}).value;
  const double v3 = paradox_probability_exact(maj, real_mu, EnumerationOptions{1e8, 3}).value;
  CHECK(v1 == v3);  // bit-identical by fixed chunk reduction order
}
