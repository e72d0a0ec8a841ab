#include "arrowkit/hyper.hpp"

#include <bit>
#include <cmath>

#include "arrowkit/errors.hpp"

namespace arrowkit {

IndicatorSet::IndicatorSet(int n, std::vector<std::uint8_t> membership)
    : n_(n), member_(std::move(membership)) {
  const std::uint64_t size = table_size_checked(n);
  require(member_.size() == size, errc::shape_mismatch, "membership table must have 2^n entries");
  for (std::uint8_t& m : member_) m = m ? 1 : 0;
}

IndicatorSet IndicatorSet::full(int n) {
  return IndicatorSet(n, std::vector<std::uint8_t>(table_size_checked(n), 1));
}

IndicatorSet IndicatorSet::empty(int n) {
  return IndicatorSet(n, std::vector<std::uint8_t>(table_size_checked(n), 0));
}

IndicatorSet IndicatorSet::plus_set(const BooleanFunction& f) {
  std::vector<std::uint8_t> member(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) member[x] = f.sign(x) > 0 ? 1 : 0;
  return IndicatorSet(f.n(), std::move(member));
}

IndicatorSet IndicatorSet::random(int n, double density, RandomStream& stream) {
  require(density >= 0.0 && density <= 1.0, errc::invalid_argument, "density must be in [0, 1]");
  const std::uint64_t size = table_size_checked(n);
  std::vector<std::uint8_t> member(size);
  for (std::uint64_t x = 0; x < size; ++x) member[x] = stream.next_unit() < density ? 1 : 0;
  return IndicatorSet(n, std::move(member));
}

IndicatorSet IndicatorSet::hamming_ball(int n, std::uint64_t center, int radius) {
  const std::uint64_t size = table_size_checked(n);
  std::vector<std::uint8_t> member(size);
  for (std::uint64_t x = 0; x < size; ++x)
    member[x] = std::popcount(x ^ center) <= radius ? 1 : 0;
  return IndicatorSet(n, std::move(member));
}

IndicatorSet IndicatorSet::subcube(int n, std::uint64_t fixed_mask, std::uint64_t fixed_values) {
  const std::uint64_t size = table_size_checked(n);
  std::vector<std::uint8_t> member(size);
  for (std::uint64_t x = 0; x < size; ++x)
    member[x] = ((x & fixed_mask) == (fixed_values & fixed_mask)) ? 1 : 0;
  return IndicatorSet(n, std::move(member));
}

IndicatorSet IndicatorSet::lex_prefix(int n, std::uint64_t count) {
  const std::uint64_t size = table_size_checked(n);
  require(count <= size, errc::invalid_argument, "prefix larger than the cube");
  std::vector<std::uint8_t> member(size);
  for (std::uint64_t x = 0; x < count; ++x) member[x] = 1;
  return IndicatorSet(n, std::move(member));
}

IndicatorSet IndicatorSet::pivotal_set(const BooleanFunction& f, int voter) {
  require(voter >= 0 && voter < f.n(), errc::invalid_argument, "voter index out of range");
  const std::uint64_t bit = std::uint64_t(1) << voter;
  std::vector<std::uint8_t> member(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x)
    member[x] = f.sign(x) != f.sign(x ^ bit) ? 1 : 0;
  return IndicatorSet(f.n(), std::move(member));
}

std::uint64_t IndicatorSet::count() const {
  std::uint64_t c = 0;
  for (std::uint8_t m : member_) c += m;
  return c;
}

double IndicatorSet::measure() const {
  return static_cast<double>(count()) / static_cast<double>(size());
}

Rational IndicatorSet::measure_exact() const { return Rational(count(), size()); }

IndicatorSet IndicatorSet::negate_coords(std::uint64_t mask) const {
  require((mask >> n_) == 0, errc::invalid_argument, "mask exceeds the set's arity");
  std::vector<std::uint8_t> member(member_.size());
  for (std::uint64_t x = 0; x < member_.size(); ++x) member[x] = member_[x ^ mask];
  return IndicatorSet(n_, std::move(member));
}

double correlated_intersection(const IndicatorSet& b1, const IndicatorSet& b2,
                               std::span<const double> rho) {
  require(b1.n() == b2.n(), errc::shape_mismatch, "sets must share n");
  require(rho.size() == static_cast<std::size_t>(b1.n()), errc::shape_mismatch,
          "need one correlation per coordinate");
  for (double r : rho)
    require(std::abs(r) <= 1.0, errc::invalid_argument, "|rho_i| must be at most 1");
  const int n = b1.n();
  const std::uint64_t size = b1.size();
  std::vector<double> a(size), b(size);
  for (std::uint64_t x = 0; x < size; ++x) {
    a[x] = b1.contains(x) ? 1.0 : 0.0;
    b[x] = b2.contains(x) ? 1.0 : 0.0;
  }
  fwht_inplace(std::span<double>(a), n);
  fwht_inplace(std::span<double>(b), n);
  // prod over subsets via the lowest-set-bit recursion
  std::vector<double> prods(size);
  prods[0] = 1.0;
  for (std::uint64_t s = 1; s < size; ++s)
    prods[s] = prods[s & (s - 1)] * rho[static_cast<std::size_t>(std::countr_zero(s))];
  double total = 0.0;
  for (std::uint64_t s = 0; s < size; ++s) total += a[s] * b[s] * prods[s];
  return total / (static_cast<double>(size) * static_cast<double>(size));
}

double correlated_intersection(const IndicatorSet& b1, const IndicatorSet& b2, double rho) {
  require(b1.n() == b2.n(), errc::shape_mismatch, "sets must share n");
  require(std::abs(rho) <= 1.0, errc::invalid_argument, "|rho| must be at most 1");
  return detail::spectral_pairing(integer_walsh01(b1.table(), b1.n()),
                                  integer_walsh01(b2.table(), b2.n()), b1.n(), rho);
}

Rational correlated_intersection_exact(const IndicatorSet& b1, const IndicatorSet& b2,
                                       const Rational& rho) {
  require(b1.n() == b2.n(), errc::shape_mismatch, "sets must share n");
  require(abs(rho) <= 1, errc::invalid_argument, "|rho| must be at most 1");
  return detail::spectral_pairing_exact(integer_walsh01(b1.table(), b1.n()),
                                        integer_walsh01(b2.table(), b2.n()), b1.n(), rho);
}

ReverseHcReport check_reverse_hc(const IndicatorSet& b1, const IndicatorSet& b2, double rho,
                                 double rho_bound) {
  require(rho_bound >= 0.0 && rho_bound < 1.0, errc::invalid_argument,
          "rho bound must lie in [0, 1)");
  require(std::abs(rho) <= rho_bound + 1e-15, errc::invalid_argument,
          "|rho| must not exceed the stated bound");
  ReverseHcReport report;
  report.measure1 = b1.measure();
  report.measure2 = b2.measure();
  report.epsilon = std::min(report.measure1, report.measure2);
  report.intersection = correlated_intersection(b1, b2, rho);
  report.bound = std::pow(report.epsilon, 2.0 / (1.0 - rho_bound));
  report.slack = report.intersection - report.bound;
  report.violated = report.slack < -1e-12;
  return report;
}

}  // namespace arrowkit
