#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "arrowkit/rational.hpp"
#include "arrowkit/ranking.hpp"
#include "arrowkit/rng.hpp"

namespace arrowkit {

// Probability distribution over the k! rankings, indexed by lex rank of
// the one-line notation. Entries are exact rationals or 64-bit floats;
// every exactness claim downstream applies only to the rational mode.
// A real mirror of the probabilities is always kept for sampling.
class VoteDistribution {
 public:
  static VoteDistribution uniform(int k);
  static VoteDistribution from_rationals(int k, std::vector<Rational> probs);
  static VoteDistribution from_reals(int k, Eigen::ArrayXd probs);
  // Point mass on one ranking.
  static VoteDistribution point_mass(const Ranking& r);

  int k() const { return k_; }
  std::uint64_t size() const { return factorial(k_); }

  bool exact() const { return exact_; }
  const std::vector<Rational>& rational_probs() const;
  const Eigen::ArrayXd& real_probs() const { return real_probs_; }

  Rational prob_exact(std::uint64_t lex_rank) const;
  double prob(std::uint64_t lex_rank) const { return real_probs_[static_cast<Eigen::Index>(lex_rank)]; }

  // Minimal atom over all k! entries (zero when the support is not full).
  double alpha() const { return alpha_; }
  Rational alpha_exact() const;

  // Reversal invariance: probs[r] == probs[reversal(r)] for all r.
  bool symmetric() const { return symmetric_; }

 private:
  VoteDistribution() = default;

  int k_ = 0;
  bool exact_ = false;
  std::vector<Rational> rational_probs_;
  Eigen::ArrayXd real_probs_;
  double alpha_ = 0.0;
  bool symmetric_ = false;
};

// Draws rankings with the distribution's exact probabilities: rational
// entries are sampled by an integer draw below the common denominator, so
// no rounding enters; real entries use inverse CDF on a 53-bit uniform.
class RankingSampler {
 public:
  explicit RankingSampler(const VoteDistribution& mu);

  std::uint64_t sample_index(RandomStream& stream) const;
  Ranking operator()(RandomStream& stream) const;

 private:
  int k_;
  bool integer_mode_;
  std::uint64_t denominator_ = 0;
  std::vector<std::uint64_t> cumulative_num_;
  std::vector<double> cumulative_real_;
};

Ranking sample_ranking(const VoteDistribution& mu, RandomStream& stream);

}  // namespace arrowkit
