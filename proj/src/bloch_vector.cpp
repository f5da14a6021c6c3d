#include "qmu/bloch_vector.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace qmu {

namespace {

double checked(double v, const char* axis) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("BlochVector: non-finite ") + axis + " component");
  }
  return v + 0.0;  // -0.0 -> +0.0
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z)
    : v_{checked(x, "x"), checked(y, "y"), checked(z, "z")} {}

BlochVector BlochVector::cross(const BlochVector& o) const {
  return {v_[1] * o.v_[2] - v_[2] * o.v_[1], v_[2] * o.v_[0] - v_[0] * o.v_[2],
          v_[0] * o.v_[1] - v_[1] * o.v_[0]};
}

BlochVector BlochVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("BlochVector: cannot normalize the zero vector");
  return *this / n;
}

BlochVector& BlochVector::operator+=(const BlochVector& o) {
  *this = BlochVector(v_[0] + o.v_[0], v_[1] + o.v_[1], v_[2] + o.v_[2]);
  return *this;
}

BlochVector& BlochVector::operator-=(const BlochVector& o) {
  *this = BlochVector(v_[0] - o.v_[0], v_[1] - o.v_[1], v_[2] - o.v_[2]);
  return *this;
}

BlochVector& BlochVector::operator*=(double s) {
  *this = BlochVector(v_[0] * s, v_[1] * s, v_[2] * s);
  return *this;
}

double angle_between(const BlochVector& a, const BlochVector& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

std::ostream& operator<<(std::ostream& os, const BlochVector& v) {
  return os << '(' << v.x() << ", " << v.y() << ", " << v.z() << ')';
}

}  // namespace qmu
