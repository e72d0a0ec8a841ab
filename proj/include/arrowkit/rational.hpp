#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace arrowkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt big_pow(BigInt base, unsigned exponent) {
  BigInt out = 1;
  while (exponent > 0) {
    if (exponent & 1u) out *= base;
    base *= base;
    exponent >>= 1u;
  }
  return out;
}

}  // namespace arrowkit
