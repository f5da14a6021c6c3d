#pragma once

#include <utility>

#include "qmu/bloch_vector.hpp"

namespace qmu {

inline constexpr double kHalfPi = 1.57079632679489661923;

/// Angle parameters of the boundary problem.
///
/// theta: incompatibility of the targets, cos(theta) = a . b, in [0, pi/2].
/// phi:   position along the boundary, in [0, pi/2].
/// mu, nu: extremum branch signs; (+1, +1) selects the minimum.
struct GeometryAngles {
  double theta = 0.0;
  double phi = 0.0;
  int mu = 1;
  int nu = 1;

  /// Throws std::invalid_argument for out-of-range angles or signs other
  /// than +-1.
  void validate() const;
};

/// One point of the metric-error boundary together with the quantities
/// that characterize the optimal approximators there.
struct BoundaryPoint {
  double theta = 0.0;
  double phi = 0.0;
  double m = 0.0;  ///< c . d of the optimal pair (nonnegative)
  double m_squared = 0.0;
  double d_a = 0.0;
  double d_b = 0.0;
  double u_c = 0.0;
  double u_d = 0.0;
};

struct ErrorPair {
  double first = 0.0;
  double second = 0.0;
};

struct ApproximatorPair {
  BlochVector c;
  BlochVector d;
};

/// Angle between unit targets a and b. Throws std::invalid_argument if
/// either is not a unit vector or the angle is obtuse.
double target_angle(const BlochVector& a, const BlochVector& b);

/// M^2 = cos^2(theta) / (1 + sin(theta) sin(2 phi)).
double yu_oh_m_squared(double theta, double phi);

/// Metric-error boundary point for targets at angle theta. The (+1, +1)
/// branch uses the closed form
///   d_a = (sin phi + sin theta cos phi) / sqrt(1 + sin theta sin 2phi) - sin phi
/// (and symmetrically for d_b); other branches evaluate
///   d_a = sqrt(1 - M^2 cos^2 phi) - mu sin phi,
///   d_b = sqrt(1 - M^2 sin^2 phi) - nu cos phi.
/// theta = 0 returns the trivial point (0, 0) with M = 1.
BoundaryPoint yu_oh_point(double theta, double phi, int mu = 1, int nu = 1);
BoundaryPoint yu_oh_point(const GeometryAngles& angles);

/// Boundary errors in terms of the approximators' unsharpness values.
/// Throws std::invalid_argument when u_c = u_d = 0 and theta > 0.
ErrorPair yu_oh_from_unsharpness(double u_c, double u_d, double theta);

/// sin(theta) - [-1/2 M^2 sin 2phi + sqrt(1/4 M^4 sin^2 2phi + 1 - M^2)],
/// zero on every boundary point.
double unsharpness_tradeoff_residual(double theta, double phi);

/// d_a sin(phi) + d_b cos(phi) - (cos(theta)/M - 1) on the boundary.
/// Throws std::domain_error at theta = pi/2 where M = 0.
double linear_tradeoff_residual(double theta, double phi);

/// Smallest achievable metric error for B given the metric error d_a for A.
/// Zero once d_a reaches sin(theta).
double yu_oh_lower_envelope(double theta, double d_a);

/// Signed distance (in d_b) of an error pair above the metric boundary.
double metric_boundary_margin(double theta, double d_a, double d_b);

/// Optimal approximator directions for unit targets a, b at boundary
/// parameter phi. For theta = 0 both equal a.
ApproximatorPair yu_oh_optimal_vectors(const BlochVector& a, const BlochVector& b, double phi);

/// Left-hand side of the noise tradeoff
///   e_a^2 (1 - e_a^2/4) + e_b^2 (1 - e_b^2/4)
///     + 2 e_a e_b cos(theta) sqrt((1 - e_a^2/4)(1 - e_b^2/4)),
/// to be compared with sin^2(theta).
double branciard_lhs(double eps_a, double eps_b, double theta);

/// branciard_lhs - sin^2(theta).
double noise_boundary_margin(double theta, double eps_a, double eps_b);

/// Unit vector in span{a, b} at angle phi from a, rotating towards b.
/// Throws std::domain_error unless 0 <= phi <= theta.
BlochVector branciard_sharp(const BlochVector& a, const BlochVector& b, double phi);

/// Noise values (eps_a, eps_b) of the sharp approximator at offset phi
/// from a: (2 sin(phi/2), 2 sin((theta - phi)/2)).
ErrorPair branciard_sharp_noise(double theta, double offset);

/// Metric errors of the same sharp approximator. Identical expressions to
/// the noise values since the approximator is sharp.
ErrorPair branciard_metric_errors(double theta, double offset);

/// Jointly measurable pair c = a* + lambda b*, d = b* + lambda a* with
/// a* = (a . m) a, b* = (b . m) b. Requires orthogonal unit targets and a
/// unit m in their span; lambda in [0, 1].
ApproximatorPair branciard_family(const BlochVector& a, const BlochVector& b,
                                  const BlochVector& m, double lambda);

}  // namespace qmu
