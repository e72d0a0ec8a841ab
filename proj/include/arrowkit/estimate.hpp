#pragma once

#include <cstdint>

namespace arrowkit {

// Bernoulli Monte Carlo summary. stderr is the sample standard deviation
// over sqrt(samples); half_width99 the 99% normal-approximation interval.
struct Estimate {
  double mean = 0.0;
  double stderr_value = 0.0;
  double half_width99 = 0.0;
  std::uint64_t samples = 0;
};

Estimate bernoulli_estimate(std::uint64_t successes, std::uint64_t samples);

inline constexpr std::uint64_t kMinMcSamples = 1000;
inline constexpr std::uint64_t kMcBlockSize = 4096;

}  // namespace arrowkit
