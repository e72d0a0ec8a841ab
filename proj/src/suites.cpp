#include "arrowkit/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arrowkit/errors.hpp"
#include "arrowkit/pivotal.hpp"
#include "arrowkit/rng.hpp"

namespace arrowkit {

namespace {

int draw_n(RandomStream& stream, int n_min, int n_max) {
  return n_min + static_cast<int>(stream.next_below(
                     static_cast<std::uint64_t>(n_max - n_min + 1)));
}

}  // namespace

BoundSuiteReport joint_pivotality_suite(const SuiteOptions& opts, const VoteDistribution& mu) {
  require(mu.k() == 3, errc::unsupported_k, "suite is stated for k = 3");
  require(opts.n_min >= 2 && opts.n_max >= opts.n_min, errc::invalid_argument,
          "need n_min >= 2 (two distinct voters)");
  const double alpha = mu.alpha();
  require(alpha > 0.0, errc::invalid_argument, "suite needs full-support mu");
  const double exponent = 1.0 / (2.0 * alpha);

  BoundSuiteReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  RandomStream root(opts.seed);
  for (std::uint64_t t = 0; t < opts.instances; ++t) {
    RandomStream stream = root.substream(t);
    const int n = draw_n(stream, opts.n_min, opts.n_max);
    const Constitution c = Constitution::random(3, n, stream);
    const int i = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;

    const double joint = joint_pivotal_probability(c, i, j, mu, opts.enumeration).value;
    const double eps = std::min(influence(c.pair_fn(0, 1), i), influence(c.pair_fn(1, 2), j));
    const double bound = eps == 0.0 ? 0.0 : std::pow(eps, exponent);
    const double slack = joint - bound;
    report.min_slack = std::min(report.min_slack, slack);
    if (slack < -1e-12) ++report.violations;
    ++report.instances;
  }
  return report;
}

BoundSuiteReport two_influential_suite(const SuiteOptions& opts, const VoteDistribution& mu) {
  require(mu.k() == 3, errc::unsupported_k, "suite is stated for k = 3");
  BoundSuiteReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  RandomStream root(opts.seed);
  for (std::uint64_t t = 0; t < opts.instances; ++t) {
    RandomStream stream = root.substream(t);
    const int n = draw_n(stream, opts.n_min, opts.n_max);
    const Constitution c = Constitution::random(3, n, stream);
    const TwoInfluentialReport r = check_two_influential_bound(c, mu, opts.enumeration);
    if (!r.holds) ++report.violations;
    if (!r.vacuous) report.min_slack = std::min(report.min_slack, r.paradox.value - r.bound);
    ++report.instances;
  }
  return report;
}

ProjectionSuiteReport dictator_projection_suite(std::uint64_t instances, const std::vector<double>& epsilons,
                                      const std::vector<int>& voter_counts, std::uint64_t seed,
                                      const EnumerationOptions& opts) {
  require(!epsilons.empty() && !voter_counts.empty(), errc::invalid_argument,
          "need at least one epsilon and one voter count");
  ProjectionSuiteReport report;
  const VoteDistribution uniform = VoteDistribution::uniform(3);
  RandomStream root(seed);
  for (std::uint64_t t = 0; t < instances; ++t) {
    RandomStream stream = root.substream(t);
    const double eps = epsilons[t % epsilons.size()];
    const int n = voter_counts[(t / epsilons.size()) % voter_counts.size()];
    const int voter = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n)));
    const Constitution dictator = Constitution::dictator(3, n, voter);

    // Flip table entries at a shrinking rate until the paradox gate
    // P(F) < (1/36) eps^3 n^-3 holds. At these parameters the smallest
    // positive paradox mass (2^-n / 3) already exceeds the gate, so the
    // loop ends at the unperturbed dictator; the gate is enforced, not
    // assumed.
    const Rational eps_exact(eps);  // exact binary value of the double
    const Rational gate =
        Rational(1, 36) * eps_exact * eps_exact * eps_exact / (BigInt(n) * BigInt(n) * BigInt(n));
    Constitution candidate = dictator;
    std::uint64_t kept_flips = 0;
    for (int attempt = 0;; ++attempt) {
      const double rate = eps * std::pow(0.5, attempt);
      std::uint64_t flips = 0;
      std::vector<BooleanFunction> fns = dictator.pair_fns();
      for (BooleanFunction& f : fns) {
        for (std::uint64_t x = 0; x < f.size(); ++x) {
          if (stream.next_unit() < rate) {
            f = f.with_flipped_entry(x);
            ++flips;
          }
        }
      }
      candidate = Constitution(3, n, std::move(fns));
      const ProbValue paradox = paradox_probability_exact(candidate, uniform, opts);
      if (paradox.exact.has_value() && *paradox.exact < gate) {
        kept_flips = flips;
        break;
      }
      if (rate < 1e-12) {
        candidate = dictator;
        kept_flips = 0;
        break;
      }
    }
    report.flipped_entries += kept_flips;

    const ProjectionResult projection = project_to_family(candidate, eps, uniform, opts);
    const bool in_family =
        projection.membership.has_value() && projection.membership->in_family();
    const Rational radius = Rational(10) * Rational(eps);
    const bool close = projection.dist.exact.has_value() && *projection.dist.exact <= radius;
    if (!in_family || !close) ++report.failures;
    report.max_distance = std::max(report.max_distance, projection.dist.value);
    ++report.instances;
  }
  return report;
}

ReverseHcSuiteReport reverse_hc_suite(std::uint64_t pairs, int n, double rho, SetFamily family,
                                      std::uint64_t seed, bool keep_rows) {
  require(n >= 1 && n <= kMaxTableBits, errc::invalid_argument, "n out of range");
  ReverseHcSuiteReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  const double rho_bound = std::abs(rho);
  RandomStream root(seed);
  for (std::uint64_t t = 0; t < pairs; ++t) {
    RandomStream stream = root.substream(t);
    const auto draw_set = [&]() -> IndicatorSet {
      switch (family) {
        case SetFamily::random: {
          const double density = 0.05 + 0.9 * stream.next_unit();
          return IndicatorSet::random(n, density, stream);
        }
        case SetFamily::balls: {
          const std::uint64_t center = stream.next_below(std::uint64_t(1) << n);
          const int radius = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n) + 1));
          return IndicatorSet::hamming_ball(n, center, radius);
        }
        case SetFamily::subcubes: {
          const std::uint64_t mask = stream.next_below(std::uint64_t(1) << n);
          const std::uint64_t values = stream.next_below(std::uint64_t(1) << n);
          return IndicatorSet::subcube(n, mask, values);
        }
      }
      fail(errc::invalid_argument, "unknown set family");
    };
    const IndicatorSet b1 = draw_set();
    const IndicatorSet b2 = draw_set();
    if (b1.count() == 0 || b2.count() == 0) {
      // Empty sets make the bound vacuous (epsilon = 0); skip but count.
      ++report.instances;
      continue;
    }
    const ReverseHcReport r = check_reverse_hc(b1, b2, rho, rho_bound);
    if (r.violated) ++report.violations;
    report.min_slack = std::min(report.min_slack, r.slack);
    if (keep_rows)
      report.rows.push_back({r.measure1, r.measure2, r.intersection, r.bound, r.slack});
    ++report.instances;
  }
  return report;
}

}  // namespace arrowkit
