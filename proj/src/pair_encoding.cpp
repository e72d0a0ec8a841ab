#include "arrowkit/pair_encoding.hpp"

#include <array>
#include <cmath>
#include <set>

#include "arrowkit/errors.hpp"

namespace arrowkit {

namespace {

void validate_pair(int k, const AltPair& p) {
  require(p.first != p.second, errc::identical_alternatives,
          "pair requires two distinct alternatives");
  require(p.first >= 0 && p.first < k && p.second >= 0 && p.second < k,
          errc::invalid_argument, "alternative index out of range");
}

}  // namespace

std::uint64_t PairEncoding::mask() const {
  require(bits.size() <= 64, errc::invalid_argument, "mask view requires n <= 64");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] > 0) m |= std::uint64_t(1) << i;
  return m;
}

PairEncoding encode_pair(const Profile& profile, int a, int b) {
  validate_pair(profile.k(), {a, b});
  PairEncoding enc;
  enc.pair = {a, b};
  enc.bits.reserve(profile.voters.size());
  for (const Ranking& r : profile.voters)
    enc.bits.push_back(r.prefers(a, b) ? std::int8_t(1) : std::int8_t(-1));
  return enc;
}

int pair_sign(const Ranking& r, const AltPair& pair) {
  return r.prefers(pair.first, pair.second) ? 1 : -1;
}

Rational pair_correlation_exact(const VoteDistribution& mu, const AltPair& p1, const AltPair& p2) {
  validate_pair(mu.k(), p1);
  validate_pair(mu.k(), p2);
  const std::uint64_t m = mu.size();
  Rational sum = 0;
  for (std::uint64_t r = 0; r < m; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(mu.k(), r);
    sum += mu.prob_exact(r) * (pair_sign(sigma, p1) * pair_sign(sigma, p2));
  }
  return sum;
}

double pair_correlation(const VoteDistribution& mu, const AltPair& p1, const AltPair& p2) {
  validate_pair(mu.k(), p1);
  validate_pair(mu.k(), p2);
  const std::uint64_t m = mu.size();
  double sum = 0.0;
  for (std::uint64_t r = 0; r < m; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(mu.k(), r);
    sum += mu.prob(r) * (pair_sign(sigma, p1) * pair_sign(sigma, p2));
  }
  return sum;
}

Rational pair_marginal_exact(const VoteDistribution& mu, const AltPair& pair) {
  validate_pair(mu.k(), pair);
  const std::uint64_t m = mu.size();
  Rational sum = 0;
  for (std::uint64_t r = 0; r < m; ++r)
    sum += mu.prob_exact(r) * pair_sign(Ranking::from_lex_rank(mu.k(), r), pair);
  return sum;
}

double pair_marginal(const VoteDistribution& mu, const AltPair& pair) {
  validate_pair(mu.k(), pair);
  const std::uint64_t m = mu.size();
  double sum = 0.0;
  for (std::uint64_t r = 0; r < m; ++r)
    sum += mu.prob(r) * pair_sign(Ranking::from_lex_rank(mu.k(), r), pair);
  return sum;
}

namespace {

void validate_triple(int k, const AltPair& target, const AltPair& g1, const AltPair& g2) {
  validate_pair(k, target);
  validate_pair(k, g1);
  validate_pair(k, g2);
  std::set<int> alts{target.first, target.second, g1.first, g1.second, g2.first, g2.second};
  require(alts.size() == 3, errc::degenerate_pairs,
          "target and given pairs must involve exactly three alternatives");
}

}  // namespace

Rational conditional_l2_squared_exact(const VoteDistribution& mu, const AltPair& target,
                                      const AltPair& given1, const AltPair& given2) {
  validate_triple(mu.k(), target, given1, given2);
  const std::uint64_t m = mu.size();
  // Cell (s1, s2) of the conditioning pair signs: mass and signed target mass.
  std::array<Rational, 4> mass{};
  std::array<Rational, 4> signed_mass{};
  for (std::uint64_t r = 0; r < m; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(mu.k(), r);
    const int cell = (pair_sign(sigma, given1) > 0 ? 1 : 0) |
                     ((pair_sign(sigma, given2) > 0 ? 1 : 0) << 1);
    const Rational p = mu.prob_exact(r);
    mass[static_cast<std::size_t>(cell)] += p;
    signed_mass[static_cast<std::size_t>(cell)] += p * pair_sign(sigma, target);
  }
  // E[(Tf)^2] = sum over cells of mass * (signed/mass)^2.
  Rational norm_sq = 0;
  for (std::size_t c = 0; c < 4; ++c)
    if (mass[c] != 0) norm_sq += signed_mass[c] * signed_mass[c] / mass[c];
  return norm_sq;
}

double conditional_l2(const VoteDistribution& mu, const AltPair& target,
                      const AltPair& given1, const AltPair& given2) {
  if (mu.exact())
    return std::sqrt(to_double(conditional_l2_squared_exact(mu, target, given1, given2)));
  validate_triple(mu.k(), target, given1, given2);
  const std::uint64_t m = mu.size();
  std::array<double, 4> mass{};
  std::array<double, 4> signed_mass{};
  for (std::uint64_t r = 0; r < m; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(mu.k(), r);
    const int cell = (pair_sign(sigma, given1) > 0 ? 1 : 0) |
                     ((pair_sign(sigma, given2) > 0 ? 1 : 0) << 1);
    const double p = mu.prob(r);
    mass[static_cast<std::size_t>(cell)] += p;
    signed_mass[static_cast<std::size_t>(cell)] += p * pair_sign(sigma, target);
  }
  double norm_sq = 0.0;
  for (std::size_t c = 0; c < 4; ++c)
    if (mass[c] > 0.0) norm_sq += signed_mass[c] * signed_mass[c] / mass[c];
  return std::sqrt(norm_sq);
}

}  // namespace arrowkit
