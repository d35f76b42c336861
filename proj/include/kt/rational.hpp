#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace kt {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Error in the structure of an input (variable-count mismatch, bad parse, ...).
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured cap (slice dimension, weight, jet order) was exceeded.
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kt
