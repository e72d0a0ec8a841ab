#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arrowkit/boolfn.hpp"
#include "arrowkit/rational.hpp"
#include "arrowkit/rng.hpp"

namespace arrowkit {

// Subset of the cube {-1,+1}^n as a dense membership table, same index
// convention as the function tables.
class IndicatorSet {
 public:
  IndicatorSet(int n, std::vector<std::uint8_t> membership);

  static IndicatorSet full(int n);
  static IndicatorSet empty(int n);
  static IndicatorSet plus_set(const BooleanFunction& f);  // {x : f(x) = +1}
  static IndicatorSet random(int n, double density, RandomStream& stream);
  static IndicatorSet hamming_ball(int n, std::uint64_t center, int radius);
  // Coordinates in fixed_mask pinned to the corresponding bits of
  // fixed_values; the rest free.
  static IndicatorSet subcube(int n, std::uint64_t fixed_mask, std::uint64_t fixed_values);
  static IndicatorSet lex_prefix(int n, std::uint64_t count);
  // {x : flipping `voter` changes f at x}; never depends on bit `voter`.
  static IndicatorSet pivotal_set(const BooleanFunction& f, int voter);

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t(1) << n_; }
  bool contains(std::uint64_t x) const { return member_[x] != 0; }
  const std::vector<std::uint8_t>& table() const { return member_; }

  std::uint64_t count() const;
  double measure() const;
  Rational measure_exact() const;

  // Reflection x -> x ^ mask (negates the coordinates in mask).
  IndicatorSet negate_coords(std::uint64_t mask) const;

 private:
  int n_;
  std::vector<std::uint8_t> member_;
};

// P[x in B1, y in B2] for (x_i, y_i) independent uniform +-1 pairs with
// E[x_i y_i] = rho_i, via the spectral identity
// sum_S ind1hat(S) ind2hat(S) prod_{i in S} rho_i.
double correlated_intersection(const IndicatorSet& b1, const IndicatorSet& b2,
                               std::span<const double> rho);
double correlated_intersection(const IndicatorSet& b1, const IndicatorSet& b2, double rho);
Rational correlated_intersection_exact(const IndicatorSet& b1, const IndicatorSet& b2,
                                       const Rational& rho);

struct ReverseHcReport {
  double measure1 = 0.0;
  double measure2 = 0.0;
  double epsilon = 0.0;       // min of the two measures
  double intersection = 0.0;
  double bound = 0.0;         // epsilon^{2/(1-rho_bound)}
  double slack = 0.0;         // intersection - bound
  bool violated = false;
};

// Reverse-hypercontractive intersection bound at per-coordinate
// correlation rho, |rho| <= rho_bound.
ReverseHcReport check_reverse_hc(const IndicatorSet& b1, const IndicatorSet& b2, double rho,
                                 double rho_bound);

}  // namespace arrowkit
