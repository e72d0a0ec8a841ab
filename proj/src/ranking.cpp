#include "arrowkit/ranking.hpp"

#include <algorithm>

#include "arrowkit/errors.hpp"

namespace arrowkit {

std::uint64_t factorial(int k) {
  require(k >= 0 && k <= 20, errc::invalid_argument,
          "factorial argument out of range: " + std::to_string(k));
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

Ranking::Ranking(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const int k = static_cast<int>(ranks_.size());
  require(k >= 1, errc::invalid_argument, "ranking needs at least one alternative");
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (int r : ranks_) {
    require(r >= 0 && r < k && !seen[static_cast<std::size_t>(r)],
            errc::invalid_argument, "ranks must be a bijection onto 0..k-1");
    seen[static_cast<std::size_t>(r)] = 1;
  }
}

Ranking Ranking::from_order(std::span<const int> order) {
  std::vector<int> ranks(order.size(), -1);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int alt = order[pos];
    require(alt >= 0 && static_cast<std::size_t>(alt) < order.size() &&
                ranks[static_cast<std::size_t>(alt)] == -1,
            errc::invalid_argument, "order must list each alternative once");
    ranks[static_cast<std::size_t>(alt)] = static_cast<int>(pos);
  }
  return Ranking(std::move(ranks));
}

Ranking Ranking::from_lex_rank(int k, std::uint64_t rank) {
  require(k >= 1 && rank < factorial(k), errc::invalid_argument,
          "lex rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(k));
  std::uint64_t radix = factorial(k);
  for (int pos = 0; pos < k; ++pos) {
    radix /= static_cast<std::uint64_t>(k - pos);
    const std::size_t idx = static_cast<std::size_t>(rank / radix);
    rank %= radix;
    order.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return from_order(order);
}

std::vector<int> Ranking::order() const {
  std::vector<int> out(ranks_.size());
  for (std::size_t a = 0; a < ranks_.size(); ++a)
    out[static_cast<std::size_t>(ranks_[a])] = static_cast<int>(a);
  return out;
}

std::uint64_t Ranking::lex_rank() const {
  const std::vector<int> ord = order();
  const int k = static_cast<int>(ord.size());
  std::uint64_t rank = 0;
  for (int pos = 0; pos < k; ++pos) {
    int smaller = 0;
    for (int later = pos + 1; later < k; ++later)
      if (ord[static_cast<std::size_t>(later)] < ord[static_cast<std::size_t>(pos)]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * factorial(k - 1 - pos);
  }
  return rank;
}

Ranking Ranking::reversed() const {
  const int k = static_cast<int>(ranks_.size());
  std::vector<int> out(ranks_.size());
  for (std::size_t a = 0; a < ranks_.size(); ++a) out[a] = k - 1 - ranks_[a];
  return Ranking(std::move(out));
}

std::uint64_t reversal_lex_rank(int k, std::uint64_t rank) {
  return Ranking::from_lex_rank(k, rank).reversed().lex_rank();
}

Profile::Profile(std::vector<Ranking> v) : voters(std::move(v)) {
  require(!voters.empty(), errc::invalid_argument, "profile needs at least one voter");
  for (const Ranking& r : voters)
    require(r.k() == voters.front().k(), errc::shape_mismatch,
            "all rankings in a profile must share the same k");
}

}  // namespace arrowkit
