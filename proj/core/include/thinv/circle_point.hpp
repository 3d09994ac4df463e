// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

namespace thinv {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Which one-sided limit to take at a point of the unit circle.
/// `right` is a(t+0): the limit approached with increasing angle.
enum class Side { left, right };

constexpr Side opposite(Side s) noexcept { return s == Side::left ? Side::right : Side::left; }

/// Wraps an angle into [0, 2pi).
double canonical_angle(double angle) noexcept;

/// Point t = exp(i*angle) on the counterclockwise unit circle.
class CirclePoint {
 public:
  constexpr CirclePoint() = default;
  explicit CirclePoint(double angle) : angle_(canonical_angle(angle)) {}

  static CirclePoint from_complex(Complex t);
  static CirclePoint one() { return CirclePoint(0.0); }
  static CirclePoint minus_one() { return CirclePoint(kPi); }

  double angle() const noexcept { return angle_; }
  Complex value() const noexcept { return std::polar(1.0, angle_); }

  /// The point 1/t = conj(t).
  CirclePoint reflected() const { return CirclePoint(kTwoPi - angle_); }

  bool in_closed_upper_half() const noexcept { return angle_ <= kPi; }
  bool in_open_upper_half() const noexcept { return angle_ > 0.0 && angle_ < kPi; }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  double angle_ = 0.0;
};

/// Angles closer than this are treated as the same point of a break set.
inline constexpr double kAngleSnap = 1e-12;

/// Distance between two angles measured along the circle.
double angular_distance(double a, double b) noexcept;

}  // namespace thinv
