#pragma once
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gaugesets/errors.hpp"

namespace gaugesets {

/// A point of the extended real line [-inf, +inf].
///
/// Backed by a double; +/-infinity are legal states, NaN is rejected on
/// construction. Adding opposite infinities throws DomainError instead of
/// silently producing NaN. Ordering is the total order of the extended line.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : v_(v) {  // implicit: finite doubles promote freely
    if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not a value");
  }

  static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  ExtReal operator-() const { return ExtReal(-v_); }

  /// Scale by a strictly positive constant (positive homogeneity).
  ExtReal scaled(double c) const {
    if (!(c > 0)) throw std::invalid_argument("ExtReal::scaled: factor must be > 0");
    return ExtReal(c * v_);
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw DomainError("ExtReal: inf + (-inf) is undefined");
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(v_);
  }

 private:
  double v_ = 0.0;
};

}  // namespace gaugesets
