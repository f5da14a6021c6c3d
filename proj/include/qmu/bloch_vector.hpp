#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

namespace qmu {

/// Validity tolerance for positivity and normalization predicates.
inline constexpr double kPositivityTol = 1e-12;

/// A point in R^3. Used for state vectors, effect directions and
/// approximator directions alike.
///
/// Components are always finite: the constructor rejects NaN and Inf, and
/// negative zero is normalized to +0.0 so that serialized output is stable.
class BlochVector {
 public:
  constexpr BlochVector() = default;
  BlochVector(double x, double y, double z);

  static BlochVector unit_x() { return {1.0, 0.0, 0.0}; }
  static BlochVector unit_y() { return {0.0, 1.0, 0.0}; }
  static BlochVector unit_z() { return {0.0, 0.0, 1.0}; }

  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  double z() const { return v_[2]; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::array<double, 3>& components() const { return v_; }

  double dot(const BlochVector& o) const {
    return v_[0] * o.v_[0] + v_[1] * o.v_[1] + v_[2] * o.v_[2];
  }
  BlochVector cross(const BlochVector& o) const;
  double norm_squared() const { return dot(*this); }
  double norm() const { return std::hypot(v_[0], v_[1], v_[2]); }

  /// Unit vector in the same direction. Throws std::domain_error on the
  /// zero vector.
  BlochVector normalized() const;

  BlochVector operator-() const { return {-v_[0], -v_[1], -v_[2]}; }
  BlochVector& operator+=(const BlochVector& o);
  BlochVector& operator-=(const BlochVector& o);
  BlochVector& operator*=(double s);

  friend BlochVector operator+(BlochVector a, const BlochVector& b) { return a += b; }
  friend BlochVector operator-(BlochVector a, const BlochVector& b) { return a -= b; }
  friend BlochVector operator*(BlochVector a, double s) { return a *= s; }
  friend BlochVector operator*(double s, BlochVector a) { return a *= s; }
  friend BlochVector operator/(BlochVector a, double s) { return a *= (1.0 / s); }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  std::array<double, 3> v_{0.0, 0.0, 0.0};
};

inline double dot(const BlochVector& a, const BlochVector& b) { return a.dot(b); }
inline BlochVector cross(const BlochVector& a, const BlochVector& b) { return a.cross(b); }
inline double distance(const BlochVector& a, const BlochVector& b) { return (a - b).norm(); }

/// Unsigned angle between two nonzero vectors, computed with atan2 so that
/// nearly parallel inputs keep full precision.
double angle_between(const BlochVector& a, const BlochVector& b);

std::ostream& operator<<(std::ostream& os, const BlochVector& v);

}  // namespace qmu
