#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arrowkit/errors.hpp"
#include "arrowkit/parallel.hpp"
#include "arrowkit/rational.hpp"
#include "arrowkit/ranking.hpp"
#include "arrowkit/vote_distribution.hpp"

namespace arrowkit {

struct EnumerationOptions {
  double budget = 1e8;  // maximum number of weighted states (k!)^n
  int threads = 1;
};

// A probability that is exact whenever the inputs were rational.
struct ProbValue {
  double value = 0.0;
  std::optional<Rational> exact;

  bool is_exact() const { return exact.has_value(); }
};

ProbValue make_exact_prob(Rational r);

namespace detail {

inline double enumeration_states(int k, int n) {
  return std::pow(static_cast<double>(factorial(k)), n);
}

inline void check_budget(int k, int n, const EnumerationOptions& opts) {
  const double states = enumeration_states(k, n);
  if (!(states <= opts.budget)) {
    throw BudgetError(states, "enumeration needs " + std::to_string(states) +
                                  " weighted states, budget is " +
                                  std::to_string(opts.budget));
  }
}

// For each ranking lex index, a bitmask over canonical pairs: bit p is set
// iff the ranking puts the pair's smaller alternative above the larger.
std::vector<std::uint64_t> ranking_pair_bits(int k);

int canonical_pair_index(int k, int a, int b);
int canonical_pair_count(int k);

template <class Weight, class Pred>
class ProfileEnumerator {
 public:
  ProfileEnumerator(int k, int n, const std::vector<Weight>& ranking_weights,
                    const std::vector<std::uint64_t>& pair_bits, Pred& pred)
      : k_(k),
        n_(n),
        num_rankings_(factorial(k)),
        num_pairs_(canonical_pair_count(k)),
        ranking_weights_(ranking_weights),
        pair_bits_(pair_bits),
        pred_(pred),
        masks_(static_cast<std::size_t>(num_pairs_), 0) {}

  // Sums the weights of profiles accepted by pred within one chunk. The
  // chunk fixes the first chunk_digits() voters; chunk order equals
  // enumeration order, so combining per-chunk sums by ascending index is
  // identical to a serial pass.
  Weight run_chunk(std::uint64_t chunk) {
    Weight weight(1);
    std::uint64_t c = chunk;
    const int d = chunk_digits();
    for (int v = d - 1; v >= 0; --v) {
      const std::uint64_t r = c % num_rankings_;
      c /= num_rankings_;
      assign(v, r);
      weight = weight * ranking_weights_[r];
    }
    acc_ = Weight(0);
    recurse(d, weight);
    return acc_;
  }

  int chunk_digits() const { return n_ >= 2 ? 2 : 1; }
  std::uint64_t chunk_count() const {
    std::uint64_t c = 1;
    for (int i = 0; i < chunk_digits(); ++i) c *= num_rankings_;
    return c;
  }

 private:
  void assign(int voter, std::uint64_t ranking) {
    const std::uint64_t bit = std::uint64_t(1) << voter;
    const std::uint64_t bits = pair_bits_[ranking];
    for (int p = 0; p < num_pairs_; ++p) {
      const std::uint64_t set = (bits >> p) & 1;
      masks_[static_cast<std::size_t>(p)] =
          (masks_[static_cast<std::size_t>(p)] & ~bit) | (set << voter);
    }
  }

  void recurse(int voter, const Weight& weight) {
    if (voter == n_) {
      if (pred_(std::span<const std::uint64_t>(masks_))) acc_ = acc_ + weight;
      return;
    }
    for (std::uint64_t r = 0; r < num_rankings_; ++r) {
      assign(voter, r);
      recurse(voter + 1, weight * ranking_weights_[r]);
    }
  }

  int k_, n_;
  std::uint64_t num_rankings_;
  int num_pairs_;
  const std::vector<Weight>& ranking_weights_;
  const std::vector<std::uint64_t>& pair_bits_;
  Pred& pred_;
  std::vector<std::uint64_t> masks_;
  Weight acc_ = Weight(0);
};

template <class Weight, class Pred>
std::vector<Weight> enumerate_chunk_sums(int k, int n,
                                         const std::vector<Weight>& ranking_weights,
                                         const EnumerationOptions& opts, Pred& pred) {
  const std::vector<std::uint64_t> pair_bits = ranking_pair_bits(k);
  ProfileEnumerator<Weight, Pred> probe(k, n, ranking_weights, pair_bits, pred);
  const std::uint64_t chunks = probe.chunk_count();
  std::vector<Weight> sums(chunks, Weight(0));
  parallel_for_chunks(chunks, opts.threads, [&](std::size_t c) {
    ProfileEnumerator<Weight, Pred> walker(k, n, ranking_weights, pair_bits, pred);
    sums[c] = walker.run_chunk(c);
  });
  return sums;
}

// Weighted probability over all profiles of the event pred(pair masks).
template <class Pred>
ProbValue weighted_profile_probability(int k, int n, const VoteDistribution& mu,
                                       const EnumerationOptions& opts, Pred&& pred) {
  check_budget(k, n, opts);
  if (!mu.exact()) {
    std::vector<double> weights(mu.size());
    for (std::uint64_t r = 0; r < mu.size(); ++r) weights[r] = mu.prob(r);
    const std::vector<double> sums = enumerate_chunk_sums(k, n, weights, opts, pred);
    double total = 0.0;
    for (double s : sums) total += s;
    return ProbValue{total, std::nullopt};
  }

  BigInt den = 1;
  for (const Rational& p : mu.rational_probs())
    den = boost::multiprecision::lcm(den, denominator(p));
  const BigInt den_pow = big_pow(den, static_cast<unsigned>(n));

  if (den_pow <= BigInt(std::uint64_t(1) << 62)) {
    std::vector<std::uint64_t> weights(mu.size());
    for (std::uint64_t r = 0; r < mu.size(); ++r) {
      const Rational& p = mu.prob_exact(r);
      weights[r] = (numerator(p) * (den / denominator(p))).convert_to<std::uint64_t>();
    }
    const std::vector<std::uint64_t> sums = enumerate_chunk_sums(k, n, weights, opts, pred);
    BigInt total = 0;
    for (std::uint64_t s : sums) total += s;
    return make_exact_prob(Rational(total, den_pow));
  }

  std::vector<BigInt> weights(mu.size());
  for (std::uint64_t r = 0; r < mu.size(); ++r) {
    const Rational& p = mu.prob_exact(r);
    weights[r] = numerator(p) * (den / denominator(p));
  }
  const std::vector<BigInt> sums = enumerate_chunk_sums(k, n, weights, opts, pred);
  BigInt total = 0;
  for (const BigInt& s : sums) total += s;
  return make_exact_prob(Rational(total, den_pow));
}

// First profile in lexicographic mixed-radix order (voter 0 most
// significant) accepted by pred, if any. Serial by construction so the
// witness is deterministic.
template <class Pred>
std::optional<Profile> find_profile(int k, int n, const EnumerationOptions& opts, Pred&& pred) {
  check_budget(k, n, opts);
  const std::vector<std::uint64_t> pair_bits = ranking_pair_bits(k);
  const std::uint64_t m = factorial(k);
  const int num_pairs = canonical_pair_count(k);
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(num_pairs), 0);
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(n), 0);

  const auto assign = [&](int voter, std::uint64_t ranking) {
    const std::uint64_t bit = std::uint64_t(1) << voter;
    const std::uint64_t bits = pair_bits[ranking];
    for (int p = 0; p < num_pairs; ++p)
      masks[static_cast<std::size_t>(p)] =
          (masks[static_cast<std::size_t>(p)] & ~bit) | (((bits >> p) & 1) << voter);
  };

  const auto build = [&]() {
    std::vector<Ranking> voters;
    voters.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      voters.push_back(Ranking::from_lex_rank(k, digits[static_cast<std::size_t>(v)]));
    return Profile(std::move(voters));
  };

  std::optional<Profile> found;
  const auto recurse = [&](auto&& self, int voter) -> bool {
    if (voter == n) {
      if (pred(std::span<const std::uint64_t>(masks))) {
        found = build();
        return true;
      }
      return false;
    }
    for (std::uint64_t r = 0; r < m; ++r) {
      digits[static_cast<std::size_t>(voter)] = r;
      assign(voter, r);
      if (self(self, voter + 1)) return true;
    }
    return false;
  };
  recurse(recurse, 0);
  return found;
}

}  // namespace detail
}  // namespace arrowkit
