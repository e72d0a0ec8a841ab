#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "arrowkit/rational.hpp"
#include "arrowkit/rng.hpp"

namespace arrowkit {

// Dense tables hold 2^n entries; bit i of the table index is 1 exactly
// when coordinate x_i = +1. All file formats inherit this convention.
// The cap guards memory, not correctness.
inline constexpr int kMaxTableBits = 25;

std::uint64_t table_size_checked(int n);

// Function on {-1,+1}^n with values in [-1, 1].
class BoundedFunction {
 public:
  BoundedFunction(int n, Eigen::ArrayXd values);
  static BoundedFunction constant(int n, double value);

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t(1) << n_; }
  double value(std::uint64_t index) const { return values_[static_cast<Eigen::Index>(index)]; }
  const Eigen::ArrayXd& values() const { return values_; }

  double mean() const { return values_.mean(); }

 private:
  int n_;
  Eigen::ArrayXd values_;
};

// Boolean subtype: values in {-1, +1}, stored as signed bytes.
class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<std::int8_t> signs);
  static BooleanFunction constant(int n, int sign);
  static BooleanFunction dictator(int n, int voter);       // x_voter
  static BooleanFunction anti_dictator(int n, int voter);  // -x_voter
  static BooleanFunction majority(int n);                  // odd n
  static BooleanFunction parity(int n);
  static BooleanFunction random(int n, RandomStream& stream);

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t(1) << n_; }
  int sign(std::uint64_t index) const { return signs_[index]; }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  BooleanFunction negated() const;
  BooleanFunction with_flipped_entry(std::uint64_t index) const;
  BoundedFunction to_bounded() const;

  double mean() const;
  bool is_constant() const;

  bool operator==(const BooleanFunction& other) const = default;

 private:
  int n_;
  std::vector<std::int8_t> signs_;
};

struct FourierExpansion {
  int n = 0;
  Eigen::ArrayXd coeffs;  // indexed by subset bitmask S

  double coeff(std::uint64_t subset) const { return coeffs[static_cast<Eigen::Index>(subset)]; }
};

// Walsh-Fourier transform: coeffs[S] = E[f(x) chi_S(x)] under the uniform
// measure, chi_S(x) = prod_{i in S} x_i.
FourierExpansion fwht(const BoundedFunction& f);
FourierExpansion fwht(const BooleanFunction& f);
BoundedFunction inverse_fwht(const FourierExpansion& expansion);

// In-place transform of raw scalar tables; `values` has 2^n entries.
// Forward leaves 2^n * fhat(S); callers divide. Integer tables of +-1
// stay exact, which backs all rational-mode spectral identities.
void fwht_inplace(std::span<double> values, int n);
void fwht_inplace(std::span<std::int64_t> values, int n);
void inverse_fwht_inplace(std::span<double> values, int n);

// 2^n * fhat(S) as exact integers.
std::vector<std::int64_t> integer_walsh(const BooleanFunction& f);
std::vector<std::int64_t> integer_walsh01(const std::vector<std::uint8_t>& table, int n);

// Probability that flipping coordinate i changes f (the pivotal measure).
double influence(const BooleanFunction& f, int i);
Rational influence_exact(const BooleanFunction& f, int i);

// Spectral influence sum_{S ni i} fhat(S)^2; the definition used for
// [-1,1]-valued functions.
double influence(const BoundedFunction& f, int i);
double spectral_influence(const FourierExpansion& expansion, int i);

double low_degree_influence(const FourierExpansion& expansion, int i, int degree);
double low_degree_influence(const BoundedFunction& f, int i, int degree);

double variance(const FourierExpansion& expansion);

// Bonami-Beckner operator T_rho: scales fhat(S) by rho^|S|.
BoundedFunction noise_operator(const BoundedFunction& f, double rho);

// E[f(X) g(Y)] for X, Y uniform on the cube with independent coordinate
// pairs, E[X_i Y_i] = rho[i]: sum_S fhat(S) ghat(S) prod_{i in S} rho_i.
double correlated_expectation(const BoundedFunction& f, const BoundedFunction& g,
                              std::span<const double> rho);
double correlated_expectation(const BoundedFunction& f, const BoundedFunction& g, double rho);
// Exact variant for equal per-coordinate correlation.
Rational correlated_expectation_exact(const BooleanFunction& f, const BooleanFunction& g,
                                      const Rational& rho);

// Averages f over the coordinates in `coord_mask`; the result no longer
// depends on them, keeps the mean, and never leaves [-1, 1].
BoundedFunction average_over_coords(const BoundedFunction& f, std::uint64_t coord_mask);

// Candidate set for projections: constants first, then dictators x_j by
// j, then negated dictators -x_j. Ties break by this order.
struct SimpleCandidate {
  enum class Kind { constant, dictator, anti_dictator };
  Kind kind;
  int voter = -1;  // for dictator kinds
  int sign = 1;    // for constants

  BooleanFunction realize(int n) const;
};

struct NearestSimple {
  SimpleCandidate candidate;
  Rational distance;  // normalized Hamming distance, exact dyadic
};

NearestSimple nearest_simple(const BooleanFunction& f);

namespace detail {

// sum_S a_S b_S rho^|S| / 4^n for integer tables a = 2^n fhat, b = 2^n ghat;
// the shared core of every equal-correlation spectral pairing.
Rational spectral_pairing_exact(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                int n, const Rational& rho);
double spectral_pairing(std::span<const std::int64_t> a, std::span<const std::int64_t> b, int n,
                        double rho);

}  // namespace detail

}  // namespace arrowkit
