#include "arrowkit/constitution.hpp"

#include <algorithm>
#include <cmath>

#include "arrowkit/errors.hpp"

namespace arrowkit {

ProbValue make_exact_prob(Rational r) {
  ProbValue out;
  out.value = to_double(r);
  out.exact = std::move(r);
  return out;
}

namespace detail {

int canonical_pair_count(int k) { return k * (k - 1) / 2; }

int canonical_pair_index(int k, int a, int b) {
  require(0 <= a && a < b && b < k, errc::invalid_argument, "need 0 <= a < b < k");
  return a * k - a * (a + 1) / 2 + (b - a - 1);
}

std::vector<std::uint64_t> ranking_pair_bits(int k) {
  const std::uint64_t m = factorial(k);
  require(canonical_pair_count(k) <= 64, errc::invalid_argument, "too many pairs");
  std::vector<std::uint64_t> bits(m, 0);
  for (std::uint64_t r = 0; r < m; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(k, r);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (sigma.prefers(a, b))
          bits[r] |= std::uint64_t(1) << canonical_pair_index(k, a, b);
  }
  return bits;
}

}  // namespace detail

int pair_index(int k, int a, int b) { return detail::canonical_pair_index(k, a, b); }
int pair_count(int k) { return detail::canonical_pair_count(k); }

int OutcomeTournament::sign(int a, int b) const {
  require(a != b, errc::identical_alternatives, "tournament sign needs distinct alternatives");
  if (a < b) return prefers[static_cast<std::size_t>(pair_index(k, a, b))];
  return -prefers[static_cast<std::size_t>(pair_index(k, b, a))];
}

bool is_transitive(const OutcomeTournament& t) {
  // A tournament is acyclic iff its out-degrees are pairwise distinct.
  std::uint32_t seen = 0;
  std::vector<int> degree(static_cast<std::size_t>(t.k), 0);
  for (int a = 0; a < t.k; ++a)
    for (int b = a + 1; b < t.k; ++b) {
      const int s = t.prefers[static_cast<std::size_t>(pair_index(t.k, a, b))];
      ++degree[static_cast<std::size_t>(s > 0 ? a : b)];
    }
  for (int a = 0; a < t.k; ++a) {
    const std::uint32_t bit = std::uint32_t(1) << degree[static_cast<std::size_t>(a)];
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

Ranking tournament_order(const OutcomeTournament& t) {
  require(is_transitive(t), errc::not_transitive, "tournament has a cycle");
  std::vector<int> degree(static_cast<std::size_t>(t.k), 0);
  for (int a = 0; a < t.k; ++a)
    for (int b = a + 1; b < t.k; ++b) {
      const int s = t.prefers[static_cast<std::size_t>(pair_index(t.k, a, b))];
      ++degree[static_cast<std::size_t>(s > 0 ? a : b)];
    }
  // k-1 wins = top of the ranking.
  std::vector<int> ranks(static_cast<std::size_t>(t.k));
  for (int a = 0; a < t.k; ++a)
    ranks[static_cast<std::size_t>(a)] = t.k - 1 - degree[static_cast<std::size_t>(a)];
  return Ranking(std::move(ranks));
}

Constitution::Constitution(int k, int n, std::vector<BooleanFunction> pair_fns)
    : k_(k), n_(n), pair_fns_(std::move(pair_fns)) {
  require(k_ >= 2, errc::too_few_alternatives, "constitution needs k >= 2");
  require(static_cast<int>(pair_fns_.size()) == pair_count(k_), errc::shape_mismatch,
          "need exactly one pairwise function per unordered pair");
  for (const BooleanFunction& f : pair_fns_)
    require(f.n() == n_, errc::shape_mismatch, "all pairwise functions must share n");
}

Constitution Constitution::dictator(int k, int n, int voter) {
  std::vector<BooleanFunction> fns(static_cast<std::size_t>(pair_count(k)),
                                   BooleanFunction::dictator(n, voter));
  return Constitution(k, n, std::move(fns));
}

Constitution Constitution::anti_dictator(int k, int n, int voter) {
  std::vector<BooleanFunction> fns(static_cast<std::size_t>(pair_count(k)),
                                   BooleanFunction::anti_dictator(n, voter));
  return Constitution(k, n, std::move(fns));
}

Constitution Constitution::constant(const Ranking& outcome, int n) {
  const int k = outcome.k();
  std::vector<BooleanFunction> fns;
  fns.reserve(static_cast<std::size_t>(pair_count(k)));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      fns.push_back(BooleanFunction::constant(n, outcome.prefers(a, b) ? 1 : -1));
  return Constitution(k, n, std::move(fns));
}

Constitution Constitution::majority(int k, int n) {
  std::vector<BooleanFunction> fns(static_cast<std::size_t>(pair_count(k)),
                                   BooleanFunction::majority(n));
  return Constitution(k, n, std::move(fns));
}

Constitution Constitution::parity(int k, int n) {
  std::vector<BooleanFunction> fns(static_cast<std::size_t>(pair_count(k)),
                                   BooleanFunction::parity(n));
  return Constitution(k, n, std::move(fns));
}

Constitution Constitution::random(int k, int n, RandomStream& stream) {
  std::vector<BooleanFunction> fns;
  fns.reserve(static_cast<std::size_t>(pair_count(k)));
  for (int p = 0; p < pair_count(k); ++p) fns.push_back(BooleanFunction::random(n, stream));
  return Constitution(k, n, std::move(fns));
}

Constitution Constitution::from_cyclic(const BooleanFunction& f_ab, const BooleanFunction& f_bc,
                                       const BooleanFunction& f_ca) {
  return Constitution(3, f_ab.n(), {f_ab, opposite_orientation(f_ca), f_bc});
}

const BooleanFunction& Constitution::pair_fn(int a, int b) const {
  return pair_fns_[static_cast<std::size_t>(pair_index(k_, a, b))];
}

Constitution Constitution::with_pair_fn(int a, int b, BooleanFunction fn) const {
  std::vector<BooleanFunction> fns = pair_fns_;
  fns[static_cast<std::size_t>(pair_index(k_, a, b))] = std::move(fn);
  return Constitution(k_, n_, std::move(fns));
}

BooleanFunction opposite_orientation(const BooleanFunction& f) {
  const std::uint64_t full = f.size() - 1;
  std::vector<std::int8_t> signs(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x)
    signs[x] = static_cast<std::int8_t>(-f.sign(~x & full));
  return BooleanFunction(f.n(), std::move(signs));
}

BooleanFunction cyclic_fn(const Constitution& c, int index) {
  require(c.k() == 3, errc::unsupported_k, "cyclic triple is defined for k = 3");
  switch (index) {
    case 0: return c.pair_fn(0, 1);
    case 1: return c.pair_fn(1, 2);
    case 2: return opposite_orientation(c.pair_fn(0, 2));
    default: fail(errc::invalid_argument, "cyclic index must be 0, 1 or 2");
  }
}

Ranking ranking_from_cyclic_signs(int s_ab, int s_bc, int s_ca) {
  require(!(s_ab == s_bc && s_bc == s_ca), errc::invalid_argument,
          "cyclic sign triple +-(1,1,1) is not a ranking");
  OutcomeTournament t;
  t.k = 3;
  t.prefers = {static_cast<std::int8_t>(s_ab), static_cast<std::int8_t>(-s_ca),
               static_cast<std::int8_t>(s_bc)};
  return tournament_order(t);
}

OutcomeTournament evaluate(const Constitution& c, const Profile& profile) {
  require(profile.k() == c.k(), errc::shape_mismatch, "profile k differs from constitution");
  require(profile.n() == c.n(), errc::shape_mismatch, "profile n differs from constitution");
  OutcomeTournament t;
  t.k = c.k();
  t.prefers.resize(static_cast<std::size_t>(pair_count(c.k())));
  for (int a = 0; a < c.k(); ++a)
    for (int b = a + 1; b < c.k(); ++b) {
      const std::uint64_t mask = encode_pair(profile, a, b).mask();
      t.prefers[static_cast<std::size_t>(pair_index(c.k(), a, b))] =
          static_cast<std::int8_t>(c.pair_fn(a, b).sign(mask));
    }
  return t;
}

namespace {

// Leaf predicates over the canonical pair-encoding masks.
struct ParadoxPred {
  const Constitution& c;

  bool operator()(std::span<const std::uint64_t> masks) const {
    if (c.k() == 3) {
      const int s01 = c.pair_fns()[0].sign(masks[0]);
      const int s02 = c.pair_fns()[1].sign(masks[1]);
      const int s12 = c.pair_fns()[2].sign(masks[2]);
      return s01 == s12 && s01 == -s02;
    }
    OutcomeTournament t;
    t.k = c.k();
    t.prefers.resize(masks.size());
    for (std::size_t p = 0; p < masks.size(); ++p)
      t.prefers[p] = static_cast<std::int8_t>(c.pair_fns()[p].sign(masks[p]));
    return !is_transitive(t);
  }
};

struct DifferPred {
  const Constitution& f;
  const Constitution& g;

  bool operator()(std::span<const std::uint64_t> masks) const {
    for (std::size_t p = 0; p < masks.size(); ++p)
      if (f.pair_fns()[p].sign(masks[p]) != g.pair_fns()[p].sign(masks[p])) return true;
    return false;
  }
};

}  // namespace

ProbValue paradox_probability_exact(const Constitution& c, const VoteDistribution& mu,
                                    const EnumerationOptions& opts) {
  require(mu.k() == c.k(), errc::shape_mismatch, "distribution k differs from constitution");
  return detail::weighted_profile_probability(c.k(), c.n(), mu, opts, ParadoxPred{c});
}

ProbValue paradox_probability_kalai(const Constitution& c, const VoteDistribution& mu) {
  require(c.k() == 3, errc::unsupported_k, "Kalai's formula applies to k = 3");
  require(mu.k() == 3, errc::shape_mismatch, "distribution k differs from constitution");

  const AltPair ab{0, 1}, ac{0, 2}, bc{1, 2};
  const BooleanFunction& f01 = c.pair_fn(0, 1);
  const BooleanFunction& f02 = c.pair_fn(0, 2);
  const BooleanFunction& f12 = c.pair_fn(1, 2);

  if (mu.exact()) {
    for (const AltPair& p : {ab, ac, bc})
      require(pair_marginal_exact(mu, p) == 0, errc::asymmetric_distribution,
              "spectral path needs unbiased pair marginals");
    // E[f^{b>c} f^{c>a}] and E[f^{c>a} f^{a>b}] fold the derived
    // orientation f^{c>a} = -f^{a>c} into a sign.
    const Rational e1 =
        correlated_expectation_exact(f01, f12, pair_correlation_exact(mu, ab, bc));
    const Rational e2 =
        -correlated_expectation_exact(f12, f02, pair_correlation_exact(mu, bc, ac));
    const Rational e3 =
        -correlated_expectation_exact(f02, f01, pair_correlation_exact(mu, ac, ab));
    return make_exact_prob((1 + e1 + e2 + e3) / 4);
  }

  for (const AltPair& p : {ab, ac, bc})
    require(std::abs(pair_marginal(mu, p)) <= 1e-12, errc::asymmetric_distribution,
            "spectral path needs unbiased pair marginals");
  const BoundedFunction b01 = f01.to_bounded();
  const BoundedFunction b02 = f02.to_bounded();
  const BoundedFunction b12 = f12.to_bounded();
  const double e1 = correlated_expectation(b01, b12, pair_correlation(mu, ab, bc));
  const double e2 = -correlated_expectation(b12, b02, pair_correlation(mu, bc, ac));
  const double e3 = -correlated_expectation(b02, b01, pair_correlation(mu, ac, ab));
  return ProbValue{0.25 * (1.0 + e1 + e2 + e3), std::nullopt};
}

ProbValue distance(const Constitution& f, const Constitution& g, const VoteDistribution& mu,
                   const EnumerationOptions& opts) {
  require(f.k() == g.k() && f.n() == g.n(), errc::shape_mismatch,
          "constitutions must share k and n");
  require(mu.k() == f.k(), errc::shape_mismatch, "distribution k differs from constitutions");
  return detail::weighted_profile_probability(f.k(), f.n(), mu, opts, DifferPred{f, g});
}

Constitution restrict(const Constitution& c, std::span<const int> alternatives) {
  require(alternatives.size() >= 2, errc::too_few_alternatives,
          "restriction needs at least two alternatives");
  std::vector<int> alts(alternatives.begin(), alternatives.end());
  std::sort(alts.begin(), alts.end());
  require(std::adjacent_find(alts.begin(), alts.end()) == alts.end(), errc::invalid_argument,
          "alternatives must be distinct");
  require(alts.front() >= 0 && alts.back() < c.k(), errc::invalid_argument,
          "alternative index out of range");
  const int kk = static_cast<int>(alts.size());
  std::vector<BooleanFunction> fns;
  fns.reserve(static_cast<std::size_t>(pair_count(kk)));
  for (int a = 0; a < kk; ++a)
    for (int b = a + 1; b < kk; ++b)
      fns.push_back(c.pair_fn(alts[static_cast<std::size_t>(a)], alts[static_cast<std::size_t>(b)]));
  return Constitution(kk, c.n(), std::move(fns));
}

namespace {

BooleanFunction pin_voter_bit(const BooleanFunction& f, int voter, bool bit_value) {
  const int n = f.n();
  const std::uint64_t low_mask = (std::uint64_t(1) << voter) - 1;
  const std::uint64_t pinned = bit_value ? (std::uint64_t(1) << voter) : 0;
  std::vector<std::int8_t> signs(f.size() >> 1);
  for (std::uint64_t y = 0; y < signs.size(); ++y) {
    const std::uint64_t index = (y & low_mask) | pinned | ((y & ~low_mask) << 1);
    signs[y] = static_cast<std::int8_t>(f.sign(index));
  }
  return BooleanFunction(n - 1, std::move(signs));
}

}  // namespace

Constitution conditional_restriction(const Constitution& c, int voter, const Ranking& fixed) {
  require(voter >= 0 && voter < c.n(), errc::invalid_argument, "voter index out of range");
  require(c.n() >= 2, errc::shape_mismatch, "cannot drop the only voter");
  require(fixed.k() == c.k(), errc::shape_mismatch, "fixed ranking k differs from constitution");
  std::vector<BooleanFunction> fns;
  fns.reserve(c.pair_fns().size());
  for (int a = 0; a < c.k(); ++a)
    for (int b = a + 1; b < c.k(); ++b)
      fns.push_back(pin_voter_bit(c.pair_fn(a, b), voter, fixed.prefers(a, b)));
  return Constitution(c.k(), c.n() - 1, std::move(fns));
}

}  // namespace arrowkit
