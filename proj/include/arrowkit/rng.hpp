#pragma once

#include <cmath>
#include <cstdint>

namespace arrowkit {

// SplitMix64 output function (Steele/Lea/Vigna reference constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-based random stream: the i-th output is a pure function of
// (seed, i), and substream(j) derives an independent stream from
// (seed, j) without touching this stream's counter. Parallel code hands
// one substream per task index so results never depend on scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    counter_ += kGamma;
    return mix64(seed_ + counter_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased uniform draw in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double next_normal() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  RandomStream substream(std::uint64_t index) const {
    return RandomStream(mix64(mix64(seed_ ^ kSubstreamSalt) + (index + 1) * kGamma));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSubstreamSalt = 0x5851f42d4c957f2dULL;

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace arrowkit
