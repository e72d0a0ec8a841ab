#include "arrowkit/vote_distribution.hpp"

#include <algorithm>
#include <cmath>

#include "arrowkit/errors.hpp"

namespace arrowkit {

namespace {

constexpr double kSumTolerance = 1e-12;

bool reversal_symmetric_exact(int k, const std::vector<Rational>& probs) {
  const std::uint64_t m = factorial(k);
  for (std::uint64_t r = 0; r < m; ++r)
    if (probs[r] != probs[reversal_lex_rank(k, r)]) return false;
  return true;
}

bool reversal_symmetric_real(int k, const Eigen::ArrayXd& probs) {
  const std::uint64_t m = factorial(k);
  for (std::uint64_t r = 0; r < m; ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    const auto j = static_cast<Eigen::Index>(reversal_lex_rank(k, r));
    if (std::abs(probs[i] - probs[j]) > kSumTolerance) return false;
  }
  return true;
}

}  // namespace

VoteDistribution VoteDistribution::uniform(int k) {
  const std::uint64_t m = factorial(k);
  std::vector<Rational> probs(m, Rational(1, m));
  return from_rationals(k, std::move(probs));
}

VoteDistribution VoteDistribution::from_rationals(int k, std::vector<Rational> probs) {
  require(k >= 2, errc::invalid_argument, "need at least two alternatives");
  const std::uint64_t m = factorial(k);
  require(probs.size() == m, errc::shape_mismatch,
          "expected " + std::to_string(m) + " probabilities");
  Rational sum = 0;
  for (const Rational& p : probs) {
    require(p >= 0, errc::invalid_argument, "probabilities must be nonnegative");
    sum += p;
  }
  require(sum == 1, errc::invalid_argument, "rational probabilities must sum to exactly 1");

  VoteDistribution mu;
  mu.k_ = k;
  mu.exact_ = true;
  mu.real_probs_.resize(static_cast<Eigen::Index>(m));
  Rational alpha = probs.front();
  for (std::uint64_t r = 0; r < m; ++r) {
    mu.real_probs_[static_cast<Eigen::Index>(r)] = to_double(probs[r]);
    alpha = std::min(alpha, probs[r]);
  }
  mu.alpha_ = to_double(alpha);
  mu.symmetric_ = reversal_symmetric_exact(k, probs);
  mu.rational_probs_ = std::move(probs);
  return mu;
}

VoteDistribution VoteDistribution::from_reals(int k, Eigen::ArrayXd probs) {
  require(k >= 2, errc::invalid_argument, "need at least two alternatives");
  const std::uint64_t m = factorial(k);
  require(static_cast<std::uint64_t>(probs.size()) == m, errc::shape_mismatch,
          "expected " + std::to_string(m) + " probabilities");
  require((probs >= 0.0).all(), errc::invalid_argument, "probabilities must be nonnegative");
  require(std::abs(probs.sum() - 1.0) <= kSumTolerance, errc::invalid_argument,
          "real probabilities must sum to 1 within 1e-12");

  VoteDistribution mu;
  mu.k_ = k;
  mu.exact_ = false;
  mu.alpha_ = probs.minCoeff();
  mu.symmetric_ = reversal_symmetric_real(k, probs);
  mu.real_probs_ = std::move(probs);
  return mu;
}

VoteDistribution VoteDistribution::point_mass(const Ranking& r) {
  const std::uint64_t m = factorial(r.k());
  std::vector<Rational> probs(m, Rational(0));
  probs[r.lex_rank()] = 1;
  return from_rationals(r.k(), std::move(probs));
}

const std::vector<Rational>& VoteDistribution::rational_probs() const {
  require(exact_, errc::invalid_argument, "distribution holds real probabilities");
  return rational_probs_;
}

Rational VoteDistribution::prob_exact(std::uint64_t lex_rank) const {
  return rational_probs()[lex_rank];
}

Rational VoteDistribution::alpha_exact() const {
  const auto& probs = rational_probs();
  return *std::min_element(probs.begin(), probs.end());
}

RankingSampler::RankingSampler(const VoteDistribution& mu) : k_(mu.k()) {
  const std::uint64_t m = mu.size();
  integer_mode_ = false;
  if (mu.exact()) {
    // Common denominator; stay in integers if it fits a u64 draw.
    BigInt den = 1;
    for (const Rational& p : mu.rational_probs())
      den = boost::multiprecision::lcm(den, denominator(p));
    if (den <= BigInt(std::uint64_t(1) << 62)) {
      integer_mode_ = true;
      denominator_ = den.convert_to<std::uint64_t>();
      cumulative_num_.reserve(m);
      BigInt acc = 0;
      for (const Rational& p : mu.rational_probs()) {
        acc += numerator(p) * (den / denominator(p));
        cumulative_num_.push_back(acc.convert_to<std::uint64_t>());
      }
    }
  }
  if (!integer_mode_) {
    cumulative_real_.reserve(m);
    double acc = 0.0;
    for (std::uint64_t r = 0; r < m; ++r) {
      acc += mu.prob(r);
      cumulative_real_.push_back(acc);
    }
    cumulative_real_.back() = 1.0;  // final bucket absorbs rounding
  }
}

std::uint64_t RankingSampler::sample_index(RandomStream& stream) const {
  if (integer_mode_) {
    const std::uint64_t draw = stream.next_below(denominator_);
    const auto it = std::upper_bound(cumulative_num_.begin(), cumulative_num_.end(), draw);
    return static_cast<std::uint64_t>(it - cumulative_num_.begin());
  }
  const double u = stream.next_unit();
  const auto it = std::upper_bound(cumulative_real_.begin(), cumulative_real_.end(), u);
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(it - cumulative_real_.begin()),
                                 cumulative_real_.size() - 1);
}

Ranking RankingSampler::operator()(RandomStream& stream) const {
  return Ranking::from_lex_rank(k_, sample_index(stream));
}

Ranking sample_ranking(const VoteDistribution& mu, RandomStream& stream) {
  return RankingSampler(mu)(stream);
}

}  // namespace arrowkit
