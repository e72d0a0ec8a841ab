#include "arrowkit/pivotal.hpp"

#include <array>
#include <cmath>

#include "arrowkit/errors.hpp"
#include "arrowkit/hyper.hpp"

namespace arrowkit {

std::uint64_t witness_index(const PivotWitness& w, int n, bool voter_bit) {
  require(w.voter >= 0 && w.voter < n, errc::invalid_argument, "witness voter out of range");
  const std::uint64_t low_mask = (std::uint64_t(1) << w.voter) - 1;
  return (w.others & low_mask) | ((voter_bit ? std::uint64_t(1) : 0) << w.voter) |
         ((w.others & ~low_mask) << 1);
}

std::optional<PivotWitness> find_pivot(const BooleanFunction& f, int voter) {
  require(voter >= 0 && voter < f.n(), errc::invalid_argument, "voter index out of range");
  const std::uint64_t others_count = f.size() >> 1;
  for (std::uint64_t y = 0; y < others_count; ++y) {
    const PivotWitness w{voter, y};
    if (f.sign(witness_index(w, f.n(), false)) != f.sign(witness_index(w, f.n(), true)))
      return w;
  }
  return std::nullopt;
}

Profile barbera_construct(const Constitution& c, const PivotWitness& w1, const PivotWitness& w2) {
  require(c.k() == 3, errc::unsupported_k, "Barbera construction is defined for k = 3");
  require(w1.voter != w2.voter, errc::same_voter, "witnesses must be on distinct voters");
  const int n = c.n();
  const std::uint64_t full = (std::uint64_t(1) << n) - 1;

  const BooleanFunction& f_ab = c.pair_fn(0, 1);
  const BooleanFunction& f_bc = c.pair_fn(1, 2);
  const BooleanFunction f_ca = cyclic_fn(c, 2);

  const std::uint64_t i_bit = std::uint64_t(1) << w1.voter;
  const std::uint64_t j_bit = std::uint64_t(1) << w2.voter;

  require(f_ab.sign(witness_index(w1, n, false)) != f_ab.sign(witness_index(w1, n, true)),
          errc::invalid_argument, "w1 is not a pivot witness for f^{a>b}");
  require(f_bc.sign(witness_index(w2, n, false)) != f_bc.sign(witness_index(w2, n, true)),
          errc::invalid_argument, "w2 is not a pivot witness for f^{b>c}");

  // x carries w1's fixed bits (x_i free), y carries w2's (y_j free);
  // z = -x except z_i = -y_i, so every per-voter sign triple avoids
  // +-(1,1,1) whatever the free bits end up being.
  const std::uint64_t x_others = witness_index(w1, n, false) & ~i_bit;
  const std::uint64_t y_others = witness_index(w2, n, false) & ~j_bit;
  const std::uint64_t z_mask = (~x_others & full & ~i_bit) |
                               ((y_others & i_bit) ? 0 : i_bit);
  const int target = f_ca.sign(z_mask);

  // Free-bit resolution order: +1 before -1 for x_i, then for y_j.
  for (const bool xi : {true, false}) {
    for (const bool yj : {true, false}) {
      const std::uint64_t x = x_others | (xi ? i_bit : 0);
      const std::uint64_t y = y_others | (yj ? j_bit : 0);
      if (f_ab.sign(x) != target || f_bc.sign(y) != target) continue;

      std::vector<Ranking> voters;
      voters.reserve(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) {
        const std::uint64_t bit = std::uint64_t(1) << v;
        const int s_ab = (x & bit) ? 1 : -1;
        const int s_bc = (y & bit) ? 1 : -1;
        const int s_ca = (z_mask & bit) ? 1 : -1;
        voters.push_back(ranking_from_cyclic_signs(s_ab, s_bc, s_ca));
      }
      Profile profile(std::move(voters));
      require(!is_transitive(evaluate(c, profile)), errc::construction_failed,
              "constructed profile unexpectedly transitive");
      return profile;
    }
  }
  fail(errc::construction_failed,
       "no free-bit assignment aligned the three pairwise decisions; "
       "check the pivot witnesses");
}

namespace {

bool unbiased_pair_marginals(const VoteDistribution& mu) {
  const std::array<AltPair, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (const AltPair& p : pairs) {
    if (mu.exact()) {
      if (pair_marginal_exact(mu, p) != 0) return false;
    } else if (std::abs(pair_marginal(mu, p)) > 1e-12) {
      return false;
    }
  }
  return true;
}

}  // namespace

ProbValue joint_pivotal_probability_enumerated(const Constitution& c, int i, int j,
                                               const VoteDistribution& mu,
                                               const EnumerationOptions& opts) {
  require(c.k() == 3, errc::unsupported_k, "joint pivotality is defined for k = 3");
  require(i != j, errc::same_voter, "voters must be distinct");
  require(i >= 0 && i < c.n() && j >= 0 && j < c.n(), errc::invalid_argument,
          "voter index out of range");
  const BooleanFunction& f_ab = c.pair_fn(0, 1);
  const BooleanFunction& f_bc = c.pair_fn(1, 2);
  const std::uint64_t i_bit = std::uint64_t(1) << i;
  const std::uint64_t j_bit = std::uint64_t(1) << j;
  const auto pred = [&](std::span<const std::uint64_t> masks) {
    return f_ab.sign(masks[0]) != f_ab.sign(masks[0] ^ i_bit) &&
           f_bc.sign(masks[2]) != f_bc.sign(masks[2] ^ j_bit);
  };
  return detail::weighted_profile_probability(3, c.n(), mu, opts, pred);
}

ProbValue joint_pivotal_probability(const Constitution& c, int i, int j,
                                    const VoteDistribution& mu, const EnumerationOptions& opts) {
  require(c.k() == 3, errc::unsupported_k, "joint pivotality is defined for k = 3");
  require(i != j, errc::same_voter, "voters must be distinct");
  require(i >= 0 && i < c.n() && j >= 0 && j < c.n(), errc::invalid_argument,
          "voter index out of range");
  if (!unbiased_pair_marginals(mu))
    return joint_pivotal_probability_enumerated(c, i, j, mu, opts);

  // Both events live on pair-encoding space, so the joint probability is
  // a correlated intersection at the single-voter correlation.
  const IndicatorSet b1 = IndicatorSet::pivotal_set(c.pair_fn(0, 1), i);
  const IndicatorSet b2 = IndicatorSet::pivotal_set(c.pair_fn(1, 2), j);
  if (mu.exact())
    return make_exact_prob(
        correlated_intersection_exact(b1, b2, pair_correlation_exact(mu, {0, 1}, {1, 2})));
  return ProbValue{correlated_intersection(b1, b2, pair_correlation(mu, {0, 1}, {1, 2})),
                   std::nullopt};
}

TwoInfluentialReport check_two_influential_bound(const Constitution& c,
                                                 const VoteDistribution& mu,
                                                 const EnumerationOptions& opts) {
  require(c.k() == 3, errc::unsupported_k, "two-influential bound is stated for k = 3");
  TwoInfluentialReport report;
  report.alpha = mu.alpha();

  // Influence matrix over the three canonical pair functions; orientation
  // does not change influences.
  const int n = c.n();
  std::array<std::vector<double>, 3> inf;
  for (int p = 0; p < 3; ++p) {
    inf[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      inf[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)] =
          influence(c.pair_fns()[static_cast<std::size_t>(p)], v);
  }
  double eps = 0.0;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      if (p == q) continue;
      for (int vi = 0; vi < n; ++vi)
        for (int vj = 0; vj < n; ++vj) {
          if (vi == vj) continue;
          eps = std::max(eps, std::min(inf[static_cast<std::size_t>(p)][static_cast<std::size_t>(vi)],
                                       inf[static_cast<std::size_t>(q)][static_cast<std::size_t>(vj)]));
        }
    }
  report.epsilon = eps;

  try {
    report.paradox = paradox_probability_exact(c, mu, opts);
    report.paradox_path = "enumeration";
  } catch (const BudgetError&) {
    report.paradox = paradox_probability_kalai(c, mu);
    report.paradox_path = "kalai";
  }

  if (eps == 0.0 || report.alpha <= 0.0) {
    report.vacuous = true;
    report.bound = 0.0;
    report.holds = true;
    return report;
  }
  report.bound = report.alpha * report.alpha * std::pow(eps, 1.0 / (2.0 * report.alpha));
  report.holds = report.paradox.value >= report.bound - 1e-12;
  return report;
}

}  // namespace arrowkit
