#include "qmu/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qmu {

namespace {

constexpr double kAngleTol = 1e-12;

void require_angle(double v, double hi, const char* what) {
  if (!std::isfinite(v) || v < -kAngleTol || v > hi + kAngleTol) {
    throw std::invalid_argument(std::string(what) + " out of range: " + std::to_string(v));
  }
}

double clamp_angle(double v, double hi) { return std::clamp(v, 0.0, hi); }

void require_unit(const BlochVector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kPositivityTol) {
    throw std::invalid_argument(std::string(what) + ": expected a unit vector");
  }
}

bool degenerate(double theta) { return theta <= kAngleTol; }

}  // namespace

void GeometryAngles::validate() const {
  require_angle(theta, kHalfPi, "theta");
  require_angle(phi, kHalfPi, "phi");
  if ((mu != 1 && mu != -1) || (nu != 1 && nu != -1)) {
    throw std::invalid_argument("branch signs must be +1 or -1");
  }
}

double target_angle(const BlochVector& a, const BlochVector& b) {
  require_unit(a, "target_angle");
  require_unit(b, "target_angle");
  const double theta = angle_between(a, b);
  require_angle(theta, kHalfPi, "target angle");
  return clamp_angle(theta, kHalfPi);
}

double yu_oh_m_squared(double theta, double phi) {
  const double c = std::cos(theta);
  return c * c / (1.0 + std::sin(theta) * std::sin(2.0 * phi));
}

BoundaryPoint yu_oh_point(double theta, double phi, int mu, int nu) {
  GeometryAngles{theta, phi, mu, nu}.validate();
  theta = clamp_angle(theta, kHalfPi);
  phi = clamp_angle(phi, kHalfPi);

  BoundaryPoint p;
  p.theta = theta;
  p.phi = phi;
  if (degenerate(theta)) {
    p.m = p.m_squared = 1.0;
    return p;
  }
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);
  const double st = std::sin(theta);
  p.m_squared = yu_oh_m_squared(theta, phi);
  p.m = std::sqrt(p.m_squared);
  if (mu == 1 && nu == 1) {
    const double root = std::sqrt(1.0 + st * std::sin(2.0 * phi));
    p.d_a = (sp + st * cp) / root - sp;
    p.d_b = (cp + st * sp) / root - cp;
  } else {
    p.d_a = std::sqrt(1.0 - p.m_squared * cp * cp) - mu * sp;
    p.d_b = std::sqrt(1.0 - p.m_squared * sp * sp) - nu * cp;
  }
  const double spread = std::sqrt(std::max(0.0, 1.0 - p.m_squared));
  p.u_c = spread * cp;
  p.u_d = spread * sp;
  return p;
}

BoundaryPoint yu_oh_point(const GeometryAngles& angles) {
  return yu_oh_point(angles.theta, angles.phi, angles.mu, angles.nu);
}

ErrorPair yu_oh_from_unsharpness(double u_c, double u_d, double theta) {
  require_angle(theta, kHalfPi, "theta");
  if (!(u_c >= 0.0) || !(u_d >= 0.0) || u_c > 1.0 + kPositivityTol || u_d > 1.0 + kPositivityTol) {
    throw std::invalid_argument("yu_oh_from_unsharpness: unsharpness must lie in [0, 1]");
  }
  if (degenerate(theta)) return {0.0, 0.0};
  if (u_c == 0.0 && u_d == 0.0) {
    throw std::invalid_argument("yu_oh_from_unsharpness: boundary angle undefined for two sharp approximators");
  }
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double norm = std::hypot(u_c, u_d);
  const double pa = u_d + u_c * st;
  const double pb = u_c + u_d * st;
  return {pa / std::sqrt(pa * pa + u_c * u_c * ct * ct) - u_d / norm,
          pb / std::sqrt(pb * pb + u_d * u_d * ct * ct) - u_c / norm};
}

double unsharpness_tradeoff_residual(double theta, double phi) {
  GeometryAngles{theta, phi}.validate();
  const double m2 = yu_oh_m_squared(theta, phi);
  const double s2 = std::sin(2.0 * phi);
  const double rhs = -0.5 * m2 * s2 + std::sqrt(0.25 * m2 * m2 * s2 * s2 + 1.0 - m2);
  return std::sin(theta) - rhs;
}

double linear_tradeoff_residual(double theta, double phi) {
  GeometryAngles{theta, phi}.validate();
  if (theta >= kHalfPi - kAngleTol) {
    throw std::domain_error("linear_tradeoff_residual: undefined for orthogonal targets (M = 0)");
  }
  const BoundaryPoint p = yu_oh_point(theta, phi);
  return p.d_a * std::sin(p.phi) + p.d_b * std::cos(p.phi) - (std::cos(p.theta) / p.m - 1.0);
}

double yu_oh_lower_envelope(double theta, double d_a) {
  require_angle(theta, kHalfPi, "theta");
  if (degenerate(theta) || d_a >= std::sin(theta)) return 0.0;
  if (d_a <= 0.0) return yu_oh_point(theta, kHalfPi).d_b;
  // d_a decreases monotonically from sin(theta) at phi = 0 to 0 at pi/2.
  double lo = 0.0;
  double hi = kHalfPi;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (yu_oh_point(theta, mid).d_a > d_a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return yu_oh_point(theta, 0.5 * (lo + hi)).d_b;
}

double metric_boundary_margin(double theta, double d_a, double d_b) {
  return d_b - yu_oh_lower_envelope(theta, d_a);
}

ApproximatorPair yu_oh_optimal_vectors(const BlochVector& a, const BlochVector& b, double phi) {
  const double theta = target_angle(a, b);
  require_angle(phi, kHalfPi, "phi");
  if (degenerate(theta)) return {a, a};
  const BoundaryPoint p = yu_oh_point(theta, phi);
  const double sp = std::sin(p.phi);
  const double cp = std::cos(p.phi);
  const double st = std::sin(theta);
  const double spread = 1.0 - p.m_squared;
  const BlochVector c = ((p.d_b + spread * cp) * sp * a + p.m * p.d_a * cp * b) / st;
  const BlochVector d = ((p.d_a + spread * sp) * cp * b + p.m * p.d_b * sp * a) / st;
  return {c, d};
}

double branciard_lhs(double eps_a, double eps_b, double theta) {
  if (!(eps_a >= 0.0) || !(eps_b >= 0.0) || eps_a > 2.0 + kPositivityTol || eps_b > 2.0 + kPositivityTol) {
    throw std::invalid_argument("branciard_lhs: noise values must lie in [0, 2]");
  }
  const double ka = std::max(0.0, 1.0 - 0.25 * eps_a * eps_a);
  const double kb = std::max(0.0, 1.0 - 0.25 * eps_b * eps_b);
  return eps_a * eps_a * ka + eps_b * eps_b * kb + 2.0 * eps_a * eps_b * std::cos(theta) * std::sqrt(ka * kb);
}

double noise_boundary_margin(double theta, double eps_a, double eps_b) {
  const double s = std::sin(theta);
  return branciard_lhs(eps_a, eps_b, theta) - s * s;
}

BlochVector branciard_sharp(const BlochVector& a, const BlochVector& b, double phi) {
  const double theta = target_angle(a, b);
  if (!std::isfinite(phi) || phi < -kAngleTol || phi > theta + kAngleTol) {
    throw std::domain_error("branciard_sharp: phi must lie between the target directions");
  }
  if (degenerate(theta)) return a;
  phi = std::clamp(phi, 0.0, theta);
  const BlochVector e2 = (b - a.dot(b) * a).normalized();
  return std::cos(phi) * a + std::sin(phi) * e2;
}

ErrorPair branciard_sharp_noise(double theta, double offset) {
  require_angle(theta, kHalfPi, "theta");
  if (!std::isfinite(offset) || offset < -kAngleTol || offset > theta + kAngleTol) {
    throw std::domain_error("branciard_sharp_noise: offset must lie in [0, theta]");
  }
  offset = std::clamp(offset, 0.0, theta);
  return {2.0 * std::sin(0.5 * offset), 2.0 * std::sin(0.5 * (theta - offset))};
}

ErrorPair branciard_metric_errors(double theta, double offset) {
  return branciard_sharp_noise(theta, offset);
}

ApproximatorPair branciard_family(const BlochVector& a, const BlochVector& b, const BlochVector& m,
                                  double lambda) {
  require_unit(a, "branciard_family");
  require_unit(b, "branciard_family");
  require_unit(m, "branciard_family");
  if (std::abs(a.dot(b)) > kPositivityTol) {
    throw std::invalid_argument("branciard_family: targets must be orthogonal");
  }
  if (std::abs(m.dot(a.cross(b))) > kPositivityTol) {
    throw std::invalid_argument("branciard_family: m must lie in the plane of the targets");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("branciard_family: lambda must lie in [0, 1]");
  }
  const BlochVector a_star = a.dot(m) * a;
  const BlochVector b_star = b.dot(m) * b;
  return {a_star + lambda * b_star, b_star + lambda * a_star};
}

}  // namespace qmu
