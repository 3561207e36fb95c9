#pragma once

#include <cmath>
#include <limits>

namespace supercrit {

/// A real number stored as an exact sign and the natural log of its magnitude.
/// Products and ratios of huge gamma-function values stay representable:
/// log_mag = +inf encodes a pole, sign = 0 (with log_mag = -inf) encodes zero.
struct SignLog {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static SignLog zero() { return SignLog{}; }

  static SignLog pole(int s = 1) {
    return SignLog{s, std::numeric_limits<double>::infinity()};
  }

  static SignLog from_value(double v) {
    if (v == 0.0) return zero();
    return SignLog{v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
  }

  static SignLog from_log(int s, double lm) { return SignLog{s, lm}; }

  bool is_zero() const { return sign == 0; }
  bool is_pole() const { return std::isinf(log_mag) && log_mag > 0.0; }

  /// Magnitude-saturating conversion back to double.
  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
  }

  friend SignLog operator*(const SignLog& a, const SignLog& b) {
    if (a.sign == 0 || b.sign == 0) {
      // zero * pole is indeterminate; caller is expected to cancel
      // removable singularities analytically before getting here.
      return zero();
    }
    return SignLog{a.sign * b.sign, a.log_mag + b.log_mag};
  }

  friend SignLog operator/(const SignLog& a, const SignLog& b) {
    if (b.is_pole()) return zero();
    if (a.sign == 0) return zero();
    return SignLog{a.sign * b.sign, a.log_mag - b.log_mag};
  }
};

}  // namespace supercrit
