#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "dcreg/error.hpp"

namespace dcreg {

/// A finite real or +inf. NaN and -inf are not representable; the arithmetic
/// below never produces them and rejects any operation that would subtract
/// +inf from something.
class ExtReal {
 public:
  constexpr ExtReal() noexcept : v_(0.0) {}

  /// Implicit from double so literals read naturally; rejects NaN and -inf.
  /// +inf (HUGE_VAL) maps to the +inf value.
  ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) fail(ErrorCode::InvalidValue, "NaN is not an extended real");
    if (v == -std::numeric_limits<double>::infinity())
      fail(ErrorCode::InvalidValue, "-inf is not an extended real");
  }

  static constexpr ExtReal infinity() noexcept {
    return ExtReal(std::numeric_limits<double>::infinity(), Raw{});
  }

  constexpr bool is_finite() const noexcept {
    return v_ != std::numeric_limits<double>::infinity();
  }
  constexpr bool is_infinite() const noexcept { return !is_finite(); }

  /// The finite value; calling this on +inf is a logic error.
  double value() const {
    if (!is_finite()) fail(ErrorCode::InvalidValue, "value() of +inf");
    return v_;
  }

  /// Raw IEEE representation (+inf encoded as HUGE_VAL). Used at the C and
  /// CSV boundaries only.
  constexpr double raw() const noexcept { return v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) noexcept {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtReal(a.v_ + b.v_, Raw{});
  }

  /// Subtracting a finite value is fine; subtracting +inf is rejected.
  friend ExtReal operator-(ExtReal a, ExtReal b) {
    if (b.is_infinite())
      fail(ErrorCode::InvalidValue, "+inf cannot appear as a subtrahend");
    if (a.is_infinite()) return infinity();
    return ExtReal(a.v_ - b.v_, Raw{});
  }

  ExtReal operator-() const {
    if (is_infinite()) fail(ErrorCode::InvalidValue, "cannot negate +inf");
    return ExtReal(-v_, Raw{});
  }

  /// Scaling by a nonnegative finite factor. 0 * +inf is +inf (an +inf
  /// constraint stays a constraint).
  ExtReal scaled(double factor) const {
    if (!(factor >= 0.0) || std::isinf(factor))
      fail(ErrorCode::InvalidArgument, "scale factor must be finite and nonnegative");
    if (is_infinite()) return infinity();
    return ExtReal(v_ * factor, Raw{});
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) noexcept {
    return a.v_ <=> b.v_;
  }

 private:
  struct Raw {};
  constexpr ExtReal(double v, Raw) noexcept : v_(v) {}

  double v_;
};

inline constexpr ExtReal kInfinity = ExtReal::infinity();

}  // namespace dcreg
