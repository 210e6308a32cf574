#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace volswap {

/// Arbitrary-precision integer and rational types. cpp_rational keeps every
/// value in lowest terms with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

inline double to_double(const ExactRational& q) {
  return q.convert_to<double>();
}

}  // namespace volswap
