#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace depbound {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow; -inf is the exact zero marker.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a == kPosInf || b == kPosInf) return kPosInf;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e^a - e^b), requires a >= b.
inline double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (a < b) return std::numeric_limits<double>::quiet_NaN();
  if (a == b) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

inline double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf || hi == kPosInf) return hi;
  double s = 0.0;
  for (double x : xs)
    if (x != kNegInf) s += std::exp(x - hi);
  return hi + std::log(s);
}

inline double log_sum_exp(const std::vector<double>& xs) {
  return log_sum_exp(std::span<const double>(xs));
}

// Non-negative quantity stored as its natural log. +/-inf are first-class:
// -inf encodes exact zero, +inf an infinite value (e.g. a divergence blow-up).
struct LogValue {
  double log = kNegInf;

  static LogValue from_log(double lg) { return LogValue{lg}; }
  static LogValue from_linear(double v) {
    return LogValue{v == 0.0 ? kNegInf : std::log(v)};
  }
  static LogValue zero() { return LogValue{kNegInf}; }
  static LogValue one() { return LogValue{0.0}; }

  double linear() const { return std::exp(log); }
  bool is_zero() const { return log == kNegInf; }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return LogValue{a.log + b.log};
  }
  friend LogValue operator/(LogValue a, LogValue b) {
    if (a.is_zero()) return zero();
    return LogValue{a.log - b.log};
  }
  friend LogValue operator+(LogValue a, LogValue b) { return LogValue{log_add(a.log, b.log)}; }
  friend bool operator<(LogValue a, LogValue b) { return a.log < b.log; }
  friend bool operator<=(LogValue a, LogValue b) { return a.log <= b.log; }
  friend bool operator>(LogValue a, LogValue b) { return a.log > b.log; }
  friend bool operator>=(LogValue a, LogValue b) { return a.log >= b.log; }
};

inline LogValue pow(LogValue a, double e) {
  if (a.is_zero()) return e > 0 ? LogValue::zero() : LogValue{e == 0 ? 0.0 : kPosInf};
  return LogValue{a.log * e};
}

}  // namespace depbound
