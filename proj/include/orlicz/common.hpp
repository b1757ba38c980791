#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace orlicz {

/// Values of Φ-functions, modulars and norms live in [0, +inf]. We use IEEE
/// doubles with +inf as an ordinary value: sums absorb it, comparisons order
/// it last. NaN is never a legal result and is rejected at field boundaries.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double v) { return v == kInf; }

/// A point of R^N. Views into cell-center storage or caller-owned arrays.
using Point = std::span<const double>;

using ScalarFn = std::function<double(Point)>;

/// Raised for violated preconditions and unusable inputs.
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a declared hypothesis of an inequality is not met on the sample.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// log(e^a + e^b) with -inf/+inf handled.
inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

/// log of a value in [0, +inf]: -inf for 0, +inf for +inf.
inline double safe_log(double v) {
  if (v <= 0.0) return -kInf;
  return std::log(v);
}

}  // namespace orlicz
