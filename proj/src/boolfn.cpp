#include "arrowkit/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "arrowkit/errors.hpp"

namespace arrowkit {

std::uint64_t table_size_checked(int n) {
  require(n >= 1 && n <= kMaxTableBits, errc::invalid_argument,
          "table arity must be in 1.." + std::to_string(kMaxTableBits) +
              ", got " + std::to_string(n));
  return std::uint64_t(1) << n;
}

BoundedFunction::BoundedFunction(int n, Eigen::ArrayXd values) : n_(n), values_(std::move(values)) {
  const std::uint64_t size = table_size_checked(n);
  require(static_cast<std::uint64_t>(values_.size()) == size, errc::shape_mismatch,
          "table must have 2^n entries");
  require((values_.abs() <= 1.0 + 1e-12).all(), errc::invalid_argument,
          "bounded function values must lie in [-1, 1]");
  values_ = values_.min(1.0).max(-1.0);
}

BoundedFunction BoundedFunction::constant(int n, double value) {
  const std::uint64_t size = table_size_checked(n);
  return BoundedFunction(n, Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(size), value));
}

BooleanFunction::BooleanFunction(int n, std::vector<std::int8_t> signs)
    : n_(n), signs_(std::move(signs)) {
  const std::uint64_t size = table_size_checked(n);
  require(signs_.size() == size, errc::shape_mismatch, "table must have 2^n entries");
  for (std::int8_t s : signs_)
    require(s == 1 || s == -1, errc::invalid_argument, "Boolean values must be +1 or -1");
}

BooleanFunction BooleanFunction::constant(int n, int sign) {
  require(sign == 1 || sign == -1, errc::invalid_argument, "sign must be +1 or -1");
  return BooleanFunction(n, std::vector<std::int8_t>(table_size_checked(n),
                                                     static_cast<std::int8_t>(sign)));
}

BooleanFunction BooleanFunction::dictator(int n, int voter) {
  const std::uint64_t size = table_size_checked(n);
  require(voter >= 0 && voter < n, errc::invalid_argument, "voter index out of range");
  std::vector<std::int8_t> signs(size);
  for (std::uint64_t x = 0; x < size; ++x)
    signs[x] = (x >> voter) & 1 ? 1 : -1;
  return BooleanFunction(n, std::move(signs));
}

BooleanFunction BooleanFunction::anti_dictator(int n, int voter) {
  return dictator(n, voter).negated();
}

BooleanFunction BooleanFunction::majority(int n) {
  require(n % 2 == 1, errc::invalid_argument, "majority needs an odd number of voters");
  const std::uint64_t size = table_size_checked(n);
  std::vector<std::int8_t> signs(size);
  for (std::uint64_t x = 0; x < size; ++x)
    signs[x] = 2 * std::popcount(x) > n ? 1 : -1;
  return BooleanFunction(n, std::move(signs));
}

BooleanFunction BooleanFunction::parity(int n) {
  const std::uint64_t size = table_size_checked(n);
  std::vector<std::int8_t> signs(size);
  for (std::uint64_t x = 0; x < size; ++x)
    signs[x] = (n - std::popcount(x)) % 2 == 0 ? 1 : -1;
  return BooleanFunction(n, std::move(signs));
}

BooleanFunction BooleanFunction::random(int n, RandomStream& stream) {
  const std::uint64_t size = table_size_checked(n);
  std::vector<std::int8_t> signs(size);
  for (std::uint64_t x = 0; x < size; ++x)
    signs[x] = (stream.next_u64() & 1) ? 1 : -1;
  return BooleanFunction(n, std::move(signs));
}

BooleanFunction BooleanFunction::negated() const {
  std::vector<std::int8_t> signs(signs_.size());
  for (std::size_t i = 0; i < signs_.size(); ++i)
    signs[i] = static_cast<std::int8_t>(-signs_[i]);
  return BooleanFunction(n_, std::move(signs));
}

BooleanFunction BooleanFunction::with_flipped_entry(std::uint64_t index) const {
  std::vector<std::int8_t> signs = signs_;
  signs[index] = static_cast<std::int8_t>(-signs[index]);
  return BooleanFunction(n_, std::move(signs));
}

BoundedFunction BooleanFunction::to_bounded() const {
  Eigen::ArrayXd values(static_cast<Eigen::Index>(signs_.size()));
  for (std::size_t i = 0; i < signs_.size(); ++i)
    values[static_cast<Eigen::Index>(i)] = signs_[i];
  return BoundedFunction(n_, std::move(values));
}

double BooleanFunction::mean() const {
  std::int64_t sum = 0;
  for (std::int8_t s : signs_) sum += s;
  return static_cast<double>(sum) / static_cast<double>(signs_.size());
}

bool BooleanFunction::is_constant() const {
  return std::all_of(signs_.begin(), signs_.end(),
                     [&](std::int8_t s) { return s == signs_.front(); });
}

// Butterfly derivation for the index convention (bit set <=> x_i = +1):
// per bit, (u, v) = (entry with x_i = -1, entry with x_i = +1) maps to
// (u + v, v - u); the inverse kernel is (u - v, u + v).
namespace {

template <class Scalar>
void forward_butterflies(Scalar* data, int n) {
  const std::uint64_t size = std::uint64_t(1) << n;
  for (int bit = 0; bit < n; ++bit) {
    const std::uint64_t stride = std::uint64_t(1) << bit;
    for (std::uint64_t block = 0; block < size; block += 2 * stride) {
      for (std::uint64_t j = block; j < block + stride; ++j) {
        const Scalar u = data[j];
        const Scalar v = data[j + stride];
        data[j] = u + v;
        data[j + stride] = v - u;
      }
    }
  }
}

}  // namespace

void fwht_inplace(std::span<double> values, int n) {
  forward_butterflies(values.data(), n);
}

void fwht_inplace(std::span<std::int64_t> values, int n) {
  forward_butterflies(values.data(), n);
}

void inverse_fwht_inplace(std::span<double> values, int n) {
  const std::uint64_t size = std::uint64_t(1) << n;
  for (int bit = 0; bit < n; ++bit) {
    const std::uint64_t stride = std::uint64_t(1) << bit;
    for (std::uint64_t block = 0; block < size; block += 2 * stride) {
      for (std::uint64_t j = block; j < block + stride; ++j) {
        const double u = values[j];
        const double v = values[j + stride];
        values[j] = u - v;
        values[j + stride] = u + v;
      }
    }
  }
}

FourierExpansion fwht(const BoundedFunction& f) {
  Eigen::ArrayXd coeffs = f.values();
  fwht_inplace({coeffs.data(), static_cast<std::size_t>(coeffs.size())}, f.n());
  coeffs /= static_cast<double>(f.size());
  return FourierExpansion{f.n(), std::move(coeffs)};
}

FourierExpansion fwht(const BooleanFunction& f) { return fwht(f.to_bounded()); }

BoundedFunction inverse_fwht(const FourierExpansion& expansion) {
  Eigen::ArrayXd values = expansion.coeffs;
  inverse_fwht_inplace({values.data(), static_cast<std::size_t>(values.size())}, expansion.n);
  return BoundedFunction(expansion.n, std::move(values));
}

std::vector<std::int64_t> integer_walsh(const BooleanFunction& f) {
  std::vector<std::int64_t> table(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) table[x] = f.sign(x);
  fwht_inplace(std::span<std::int64_t>(table), f.n());
  return table;
}

std::vector<std::int64_t> integer_walsh01(const std::vector<std::uint8_t>& table, int n) {
  std::vector<std::int64_t> out(table.size());
  for (std::size_t x = 0; x < table.size(); ++x) out[x] = table[x] ? 1 : 0;
  fwht_inplace(std::span<std::int64_t>(out), n);
  return out;
}

Rational influence_exact(const BooleanFunction& f, int i) {
  require(i >= 0 && i < f.n(), errc::invalid_argument, "coordinate out of range");
  const std::uint64_t bit = std::uint64_t(1) << i;
  std::uint64_t flips = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (!(x & bit) && f.sign(x) != f.sign(x | bit)) ++flips;
  return Rational(flips, f.size() >> 1);
}

double influence(const BooleanFunction& f, int i) { return to_double(influence_exact(f, i)); }

double spectral_influence(const FourierExpansion& expansion, int i) {
  require(i >= 0 && i < expansion.n, errc::invalid_argument, "coordinate out of range");
  const std::uint64_t bit = std::uint64_t(1) << i;
  const std::uint64_t size = std::uint64_t(1) << expansion.n;
  double sum = 0.0;
  for (std::uint64_t s = 0; s < size; ++s)
    if (s & bit) sum += expansion.coeff(s) * expansion.coeff(s);
  return sum;
}

double influence(const BoundedFunction& f, int i) { return spectral_influence(fwht(f), i); }

double low_degree_influence(const FourierExpansion& expansion, int i, int degree) {
  require(i >= 0 && i < expansion.n, errc::invalid_argument, "coordinate out of range");
  require(degree >= 0, errc::invalid_argument, "degree must be nonnegative");
  const std::uint64_t bit = std::uint64_t(1) << i;
  const std::uint64_t size = std::uint64_t(1) << expansion.n;
  double sum = 0.0;
  for (std::uint64_t s = 0; s < size; ++s)
    if ((s & bit) && std::popcount(s) <= degree) sum += expansion.coeff(s) * expansion.coeff(s);
  return sum;
}

double low_degree_influence(const BoundedFunction& f, int i, int degree) {
  return low_degree_influence(fwht(f), i, degree);
}

double variance(const FourierExpansion& expansion) {
  return expansion.coeffs.square().sum() - expansion.coeffs[0] * expansion.coeffs[0];
}

BoundedFunction noise_operator(const BoundedFunction& f, double rho) {
  require(std::abs(rho) <= 1.0, errc::invalid_argument, "|rho| must be at most 1");
  FourierExpansion expansion = fwht(f);
  const std::uint64_t size = f.size();
  for (std::uint64_t s = 0; s < size; ++s)
    expansion.coeffs[static_cast<Eigen::Index>(s)] *=
        std::pow(rho, static_cast<double>(std::popcount(s)));
  return inverse_fwht(expansion);
}

namespace {

// prod_{i in S} rho_i for every subset, via the lowest-set-bit recursion.
Eigen::ArrayXd subset_products(std::span<const double> rho, int n) {
  const std::uint64_t size = std::uint64_t(1) << n;
  Eigen::ArrayXd prods(static_cast<Eigen::Index>(size));
  prods[0] = 1.0;
  for (std::uint64_t s = 1; s < size; ++s)
    prods[static_cast<Eigen::Index>(s)] =
        prods[static_cast<Eigen::Index>(s & (s - 1))] * rho[static_cast<std::size_t>(std::countr_zero(s))];
  return prods;
}

}  // namespace

double correlated_expectation(const BoundedFunction& f, const BoundedFunction& g,
                              std::span<const double> rho) {
  require(f.n() == g.n(), errc::shape_mismatch, "functions must share n");
  require(rho.size() == static_cast<std::size_t>(f.n()), errc::shape_mismatch,
          "need one correlation per coordinate");
  for (double r : rho)
    require(std::abs(r) <= 1.0, errc::invalid_argument, "|rho_i| must be at most 1");
  const FourierExpansion fe = fwht(f);
  const FourierExpansion ge = fwht(g);
  return (fe.coeffs * ge.coeffs * subset_products(rho, f.n())).sum();
}

double correlated_expectation(const BoundedFunction& f, const BoundedFunction& g, double rho) {
  std::vector<double> rhos(static_cast<std::size_t>(f.n()), rho);
  return correlated_expectation(f, g, rhos);
}

namespace detail {

// Level sums: with A_S = 2^n fhat(S), sum_S |A_S B_S| <= 4^n, so the
// per-level accumulators stay inside int64 up to n = 25.
static std::vector<std::int64_t> pairing_level_sums(std::span<const std::int64_t> a,
                                                    std::span<const std::int64_t> b, int n) {
  std::vector<std::int64_t> level(static_cast<std::size_t>(n) + 1, 0);
  const std::uint64_t size = std::uint64_t(1) << n;
  for (std::uint64_t s = 0; s < size; ++s)
    level[static_cast<std::size_t>(std::popcount(s))] += a[s] * b[s];
  return level;
}

Rational spectral_pairing_exact(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                int n, const Rational& rho) {
  const std::vector<std::int64_t> level = pairing_level_sums(a, b, n);
  const BigInt num = numerator(rho);
  const BigInt den = denominator(rho);
  BigInt total = 0;
  for (int d = 0; d <= n; ++d)
    total += BigInt(level[static_cast<std::size_t>(d)]) * big_pow(num, static_cast<unsigned>(d)) *
             big_pow(den, static_cast<unsigned>(n - d));
  return Rational(total, big_pow(BigInt(4), static_cast<unsigned>(n)) *
                             big_pow(den, static_cast<unsigned>(n)));
}

double spectral_pairing(std::span<const std::int64_t> a, std::span<const std::int64_t> b, int n,
                        double rho) {
  const std::vector<std::int64_t> level = pairing_level_sums(a, b, n);
  double total = 0.0;
  double rho_pow = 1.0;
  for (int d = 0; d <= n; ++d) {
    total += static_cast<double>(level[static_cast<std::size_t>(d)]) * rho_pow;
    rho_pow *= rho;
  }
  return total / std::pow(4.0, n);
}

}  // namespace detail

Rational correlated_expectation_exact(const BooleanFunction& f, const BooleanFunction& g,
                                      const Rational& rho) {
  require(f.n() == g.n(), errc::shape_mismatch, "functions must share n");
  require(abs(rho) <= 1, errc::invalid_argument, "|rho| must be at most 1");
  return detail::spectral_pairing_exact(integer_walsh(f), integer_walsh(g), f.n(), rho);
}

BoundedFunction average_over_coords(const BoundedFunction& f, std::uint64_t coord_mask) {
  require((coord_mask >> f.n()) == 0, errc::invalid_argument,
          "coordinate set exceeds the function's arity");
  Eigen::ArrayXd values = f.values();
  const std::uint64_t size = f.size();
  for (int bit = 0; bit < f.n(); ++bit) {
    if (!((coord_mask >> bit) & 1)) continue;
    const std::uint64_t stride = std::uint64_t(1) << bit;
    for (std::uint64_t block = 0; block < size; block += 2 * stride) {
      for (std::uint64_t j = block; j < block + stride; ++j) {
        const double avg = 0.5 * (values[static_cast<Eigen::Index>(j)] +
                                  values[static_cast<Eigen::Index>(j + stride)]);
        values[static_cast<Eigen::Index>(j)] = avg;
        values[static_cast<Eigen::Index>(j + stride)] = avg;
      }
    }
  }
  return BoundedFunction(f.n(), std::move(values));
}

BooleanFunction SimpleCandidate::realize(int n) const {
  switch (kind) {
    case Kind::constant: return BooleanFunction::constant(n, sign);
    case Kind::dictator: return BooleanFunction::dictator(n, voter);
    case Kind::anti_dictator: return BooleanFunction::anti_dictator(n, voter);
  }
  fail(errc::invalid_argument, "unknown candidate kind");
}

NearestSimple nearest_simple(const BooleanFunction& f) {
  const int n = f.n();
  const std::uint64_t size = f.size();

  std::uint64_t plus_count = 0;
  for (std::uint64_t x = 0; x < size; ++x)
    if (f.sign(x) > 0) ++plus_count;

  // Mismatch counts against each candidate, visited in tie-break order.
  SimpleCandidate best{SimpleCandidate::Kind::constant, -1, 1};
  std::uint64_t best_mismatch = size - plus_count;  // constant +1

  const auto consider = [&](const SimpleCandidate& cand, std::uint64_t mismatch) {
    if (mismatch < best_mismatch) {
      best_mismatch = mismatch;
      best = cand;
    }
  };

  consider({SimpleCandidate::Kind::constant, -1, -1}, plus_count);
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t(1) << j;
    std::uint64_t mismatch = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      const int dict = (x & bit) ? 1 : -1;
      if (f.sign(x) != dict) ++mismatch;
    }
    consider({SimpleCandidate::Kind::dictator, j, 1}, mismatch);
  }
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t(1) << j;
    std::uint64_t mismatch = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      const int dict = (x & bit) ? -1 : 1;
      if (f.sign(x) != dict) ++mismatch;
    }
    consider({SimpleCandidate::Kind::anti_dictator, j, 1}, mismatch);
  }

  return NearestSimple{best, Rational(best_mismatch, size)};
}

}  // namespace arrowkit
