#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace arrowkit {

std::uint64_t factorial(int k);

// Strict total order of k alternatives. ranks[a] is the position of
// alternative a, 0 = top. Alternatives are 0-based integers throughout.
class Ranking {
 public:
  explicit Ranking(std::vector<int> ranks);

  // Builds from one-line notation read top to bottom (order[p] = the
  // alternative at position p).
  static Ranking from_order(std::span<const int> order);

  // Inverse of lex_rank(): the rank-th permutation of the one-line
  // notation in lexicographic order.
  static Ranking from_lex_rank(int k, std::uint64_t rank);

  int k() const { return static_cast<int>(ranks_.size()); }
  int rank_of(int alternative) const { return ranks_[alternative]; }
  const std::vector<int>& ranks() const { return ranks_; }

  bool prefers(int a, int b) const { return ranks_[a] < ranks_[b]; }

  std::vector<int> order() const;

  // Lexicographic rank of the one-line notation; the canonical index used
  // by every file format and probability table.
  std::uint64_t lex_rank() const;

  Ranking reversed() const;

  bool operator==(const Ranking& other) const = default;

 private:
  std::vector<int> ranks_;
};

// Lex rank of the reversal of the ranking with the given lex rank.
std::uint64_t reversal_lex_rank(int k, std::uint64_t rank);

struct Profile {
  std::vector<Ranking> voters;

  explicit Profile(std::vector<Ranking> v);

  int n() const { return static_cast<int>(voters.size()); }
  int k() const { return voters.empty() ? 0 : voters.front().k(); }

  bool operator==(const Profile& other) const = default;
};

}  // namespace arrowkit
