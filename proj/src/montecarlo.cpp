#include "arrowkit/montecarlo.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "arrowkit/errors.hpp"
#include "arrowkit/parallel.hpp"
#include "arrowkit/rng.hpp"

namespace arrowkit {

Estimate bernoulli_estimate(std::uint64_t successes, std::uint64_t samples) {
  Estimate e;
  e.samples = samples;
  e.mean = static_cast<double>(successes) / static_cast<double>(samples);
  e.stderr_value = samples > 1 ? std::sqrt(e.mean * (1.0 - e.mean) /
                                           static_cast<double>(samples - 1))
                               : 0.0;
  e.half_width99 = 2.5758293035489004 * e.stderr_value;  // z_{0.995}
  return e;
}

namespace {

// Runs fn once per sample on a per-block substream and reduces block
// success counts; counts are integers, so the total is scheduling-proof.
template <class SampleFn>
Estimate block_bernoulli(std::uint64_t samples, std::uint64_t seed, int threads,
                         const SampleFn& fn) {
  require(samples >= kMinMcSamples, errc::invalid_argument,
          "need at least " + std::to_string(kMinMcSamples) + " samples");
  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<std::uint64_t> counts(blocks, 0);
  const RandomStream root(seed);
  parallel_for_chunks(blocks, threads, [&](std::size_t b) {
    RandomStream stream = root.substream(b);
    const std::uint64_t begin = b * kMcBlockSize;
    const std::uint64_t end = std::min(samples, begin + kMcBlockSize);
    std::uint64_t hits = 0;
    for (std::uint64_t s = begin; s < end; ++s)
      if (fn(stream)) ++hits;
    counts[b] = hits;
  });
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return bernoulli_estimate(total, samples);
}

// ranking_pair_bits caps the canonical pair count at 64, so fixed stack
// buffers cover every reachable k.
constexpr int kMaxPairs = 64;

bool cyclic_outcome(std::span<const int> signs, int k) {
  if (k == 3) return signs[0] == signs[2] && signs[0] == -signs[1];
  OutcomeTournament t;
  t.k = k;
  t.prefers.assign(signs.begin(), signs.end());
  return !is_transitive(t);
}

}  // namespace

Estimate estimate_paradox(const Constitution& c, const VoteDistribution& mu,
                          std::uint64_t samples, std::uint64_t seed, int threads) {
  require(mu.k() == c.k(), errc::shape_mismatch, "distribution k differs from constitution");
  const RankingSampler sampler(mu);
  const std::vector<std::uint64_t> pair_bits = detail::ranking_pair_bits(c.k());
  const int num_pairs = pair_count(c.k());
  const int n = c.n();

  return block_bernoulli(samples, seed, threads, [&](RandomStream& stream) {
    std::array<std::uint64_t, kMaxPairs> masks{};
    for (int v = 0; v < n; ++v) {
      const std::uint64_t bits = pair_bits[sampler.sample_index(stream)];
      for (int p = 0; p < num_pairs; ++p)
        masks[static_cast<std::size_t>(p)] |= ((bits >> p) & 1) << v;
    }
    std::array<int, kMaxPairs> signs{};
    for (int p = 0; p < num_pairs; ++p)
      signs[static_cast<std::size_t>(p)] =
          c.pair_fns()[static_cast<std::size_t>(p)].sign(masks[static_cast<std::size_t>(p)]);
    return cyclic_outcome({signs.data(), static_cast<std::size_t>(num_pairs)}, c.k());
  });
}

Estimate estimate_distance(const Constitution& f, const Constitution& g,
                           const VoteDistribution& mu, std::uint64_t samples, std::uint64_t seed,
                           int threads) {
  require(f.k() == g.k() && f.n() == g.n(), errc::shape_mismatch,
          "constitutions must share k and n");
  require(mu.k() == f.k(), errc::shape_mismatch, "distribution k differs from constitutions");
  const RankingSampler sampler(mu);
  const std::vector<std::uint64_t> pair_bits = detail::ranking_pair_bits(f.k());
  const int num_pairs = pair_count(f.k());
  const int n = f.n();

  return block_bernoulli(samples, seed, threads, [&](RandomStream& stream) {
    std::array<std::uint64_t, kMaxPairs> masks{};
    for (int v = 0; v < n; ++v) {
      const std::uint64_t bits = pair_bits[sampler.sample_index(stream)];
      for (int p = 0; p < num_pairs; ++p)
        masks[static_cast<std::size_t>(p)] |= ((bits >> p) & 1) << v;
    }
    for (int p = 0; p < num_pairs; ++p) {
      const std::uint64_t m = masks[static_cast<std::size_t>(p)];
      if (f.pair_fns()[static_cast<std::size_t>(p)].sign(m) !=
          g.pair_fns()[static_cast<std::size_t>(p)].sign(m))
        return true;
    }
    return false;
  });
}

Estimate estimate_majority_paradox(int k, int n_voters, const VoteDistribution& mu,
                                   std::uint64_t samples, std::uint64_t seed, int threads) {
  require(k >= 3, errc::too_few_alternatives, "need at least three alternatives");
  require(n_voters % 2 == 1, errc::invalid_argument, "majority needs an odd number of voters");
  require(mu.k() == k, errc::shape_mismatch, "distribution k mismatch");
  const RankingSampler sampler(mu);
  const std::vector<std::uint64_t> pair_bits = detail::ranking_pair_bits(k);
  const int num_pairs = pair_count(k);

  return block_bernoulli(samples, seed, threads, [&](RandomStream& stream) {
    std::array<int, kMaxPairs> sums{};
    for (int v = 0; v < n_voters; ++v) {
      const std::uint64_t bits = pair_bits[sampler.sample_index(stream)];
      for (int p = 0; p < num_pairs; ++p)
        sums[static_cast<std::size_t>(p)] += ((bits >> p) & 1) ? 1 : -1;
    }
    std::array<int, kMaxPairs> signs{};
    for (int p = 0; p < num_pairs; ++p)
      signs[static_cast<std::size_t>(p)] = sums[static_cast<std::size_t>(p)] > 0 ? 1 : -1;
    return cyclic_outcome({signs.data(), static_cast<std::size_t>(num_pairs)}, k);
  });
}

}  // namespace arrowkit
