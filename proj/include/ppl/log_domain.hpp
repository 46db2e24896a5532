#pragma once

#include <cmath>
#include <limits>

#include "ppl/errors.hpp"

namespace ppl {

/// A positive quantity carried as its natural logarithm.
/// value == -inf represents exactly zero.
struct LogValue {
  double value = -std::numeric_limits<double>::infinity();

  LogValue() = default;
  explicit LogValue(double log_v) : value(log_v) {}

  static LogValue zero() { return LogValue(); }
  static LogValue from_log(double log_v) { return LogValue(log_v); }
  static LogValue from_linear(double v) {
    if (v < 0.0 || std::isnan(v)) throw domain_error("LogValue: negative or NaN");
    return LogValue(std::log(v));
  }

  bool is_zero() const { return std::isinf(value) && value < 0.0; }
  double linear() const { return std::exp(value); }
};

/// log(e^a + e^b), safe for widely separated magnitudes.
inline double log_add(double a, double b) {
  if (std::isinf(a) && a < 0.0) return b;
  if (std::isinf(b) && b < 0.0) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

/// log(e^a - e^b); requires a >= b.
inline double log_diff(double a, double b) {
  if (std::isinf(b) && b < 0.0) return a;
  if (b > a) throw domain_error("log_diff: negative result");
  if (b == a) return -std::numeric_limits<double>::infinity();
  return a + std::log1p(-std::exp(b - a));
}

inline LogValue log_add(LogValue a, LogValue b) { return LogValue(log_add(a.value, b.value)); }
inline LogValue log_diff(LogValue a, LogValue b) { return LogValue(log_diff(a.value, b.value)); }

}  // namespace ppl
