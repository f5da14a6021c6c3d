#include "qmu/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmu/compat.hpp"

namespace qmu {

namespace {

constexpr int kOracleShells = 8;

// Orthonormal frame adapted to the ellipsoid of c and the target b:
// axis along c, first_perp in span{c, b}, second_perp normal to both.
struct EllipsoidFrame {
  BlochVector axis;
  BlochVector first_perp;
  BlochVector second_perp;
  double major = 1.0;  // semi-axis along c
  double minor = 1.0;  // semi-axis across c, the unsharpness of c
};

BlochVector any_perpendicular(const BlochVector& u) {
  const BlochVector t = std::abs(u.x()) < 0.9 ? BlochVector::unit_x() : BlochVector::unit_y();
  return (t - t.dot(u) * u).normalized();
}

EllipsoidFrame frame_for(const BlochVector& c, const BlochVector& b) {
  EllipsoidFrame f;
  const double nc = c.norm();
  f.axis = nc > 0.0 ? c / nc : b.normalized();
  const BlochVector w = b - b.dot(f.axis) * f.axis;
  const double nw = w.norm();
  f.first_perp = nw > 1e-14 * b.norm() ? w / nw : any_perpendicular(f.axis);
  f.second_perp = f.axis.cross(f.first_perp);
  f.minor = std::sqrt(std::max(0.0, 1.0 - nc * nc));
  return f;
}

void require_direction(const BlochVector& v, const char* what) {
  if (v.norm() > 1.0 + kPositivityTol) {
    throw std::invalid_argument(std::string(what) + ": vector longer than 1");
  }
}

void require_unit(const BlochVector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kPositivityTol) {
    throw std::invalid_argument(std::string(what) + ": target must be a unit vector");
  }
}

// Closest point of the ellipse x0^2/e0^2 + x1^2/e1^2 = 1 (e0 >= e1 > 0) to
// (y0, y1) with y0, y1 >= 0 and the point outside. The Lagrange condition
// x_i = e_i^2 y_i / (e_i^2 + t) leaves one scalar equation for the
// multiplier t, solved by bisection on its bracketing interval.
std::pair<double, double> nearest_on_ellipse(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double r0 = (e0 / e1) * (e0 / e1);
      auto excess = [&](double s) {
        const double p = r0 * z0 / (s + r0);
        const double q = z1 / (s + 1.0);
        return p * p + q * q - 1.0;
      };
      double lo = z1 - 1.0;
      double hi = std::hypot(r0 * z0, z1) - 1.0;
      double s = hi;
      for (int i = 0; i < 2000; ++i) {
        s = 0.5 * (lo + hi);
        if (s == lo || s == hi) break;
        const double g = excess(s);
        if (g > 0.0) {
          lo = s;
        } else if (g < 0.0) {
          hi = s;
        } else {
          break;
        }
      }
      return {r0 * y0 / (s + r0), y1 / (s + 1.0)};
    }
    return {0.0, e1};
  }
  const double numer = e0 * y0;
  const double denom = e0 * e0 - e1 * e1;
  if (numer < denom) {
    const double ratio = numer / denom;
    return {e0 * ratio, e1 * std::sqrt(std::max(0.0, 1.0 - ratio * ratio))};
  }
  return {e0, 0.0};
}

double objective_value(Measure objective, const BlochVector& b, const BlochVector& d) {
  if (objective == Measure::metric_d) return (b - d).norm();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - b.dot(d))));
}

BlochVector best_response(Measure measure, const BlochVector& other, const BlochVector& target,
                          const OptimizerConfig& cfg) {
  return measure == Measure::metric_d ? min_D_given_c(other, target, cfg)
                                      : min_noise_given_c(other, target, cfg);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (grid_n < 32) throw std::invalid_argument("OptimizerConfig: grid_n must be at least 32");
  if (max_iter < 1) throw std::invalid_argument("OptimizerConfig: max_iter must be positive");
  if (!(conv_tol > 0.0)) throw std::invalid_argument("OptimizerConfig: conv_tol must be positive");
}

BlochVector SampleRng::in_ball() {
  for (;;) {
    const double x = uniform(-1.0, 1.0);
    const double y = uniform(-1.0, 1.0);
    const double z = uniform(-1.0, 1.0);
    if (x * x + y * y + z * z <= 1.0) return {x, y, z};
  }
}

BlochVector min_D_given_c(const BlochVector& c, const BlochVector& b, const OptimizerConfig& cfg) {
  cfg.validate();
  require_direction(c, "min_D_given_c");
  require_unit(b, "min_D_given_c");
  if (c.norm() == 0.0) return b;  // unit ball

  const EllipsoidFrame f = frame_for(c, b);
  const double y0 = b.dot(f.axis);
  const double y1 = b.dot(f.first_perp);
  if (f.minor == 0.0) return std::clamp(y0, -1.0, 1.0) * f.axis;

  const double inside = y0 * y0 + (y1 / f.minor) * (y1 / f.minor);
  if (inside <= 1.0) return b;
  const auto [x0, x1] = nearest_on_ellipse(f.major, f.minor, std::abs(y0), std::abs(y1));
  return std::copysign(x0, y0) * f.axis + std::copysign(x1, y1) * f.first_perp;
}

BlochVector min_noise_given_c(const BlochVector& c, const BlochVector& b, const OptimizerConfig& cfg) {
  cfg.validate();
  require_direction(c, "min_noise_given_c");
  require_unit(b, "min_noise_given_c");
  if (c.norm() == 0.0) return b;

  // support point of the ellipsoid in direction b: E^2 b / sqrt(b^T E^2 b)
  const EllipsoidFrame f = frame_for(c, b);
  const double y0 = b.dot(f.axis);
  const double y1 = b.dot(f.first_perp);
  const double m2 = f.minor * f.minor;
  const double scale = std::sqrt(y0 * y0 + m2 * y1 * y1);
  if (scale == 0.0) return BlochVector{};
  return (y0 * f.axis + m2 * y1 * f.first_perp) / scale;
}

BlochVector compat_surface_normal(const BlochVector& c, const BlochVector& d) {
  const BlochVector plus = d + c;
  const BlochVector minus = d - c;
  BlochVector n;
  if (plus.norm() > 0.0) n += plus / plus.norm();
  if (minus.norm() > 0.0) n += minus / minus.norm();
  return n;
}

NotConvergedError::NotConvergedError(IterationTrace trace)
    : std::runtime_error("alternate_minimize: no convergence after " +
                         std::to_string(trace.pairs.size()) + " iterations"),
      trace_(std::move(trace)) {}

IterationTrace alternate_minimize(Measure measure, const BlochVector& a, const BlochVector& b,
                                  const BlochVector& c0, const OptimizerConfig& cfg) {
  cfg.validate();
  require_unit(a, "alternate_minimize");
  require_unit(b, "alternate_minimize");
  require_direction(c0, "alternate_minimize");
  if (a.dot(b) < -kPositivityTol) {
    throw std::invalid_argument("alternate_minimize: targets must not form an obtuse angle");
  }

  IterationTrace trace;
  BlochVector c = c0;
  BlochVector d = best_response(measure, c, b, cfg);
  trace.pairs.push_back({c, d});
  for (int k = 0; k < cfg.max_iter; ++k) {
    const BlochVector c_next = best_response(measure, d, a, cfg);
    const BlochVector d_next = best_response(measure, c_next, b, cfg);
    bool done = false;
    if (measure == Measure::noise_eps) {
      done = (c_next - c).norm() + (d_next - d).norm() < cfg.conv_tol;
    } else {
      const double moved = std::max(std::abs((a - c_next).norm() - (a - c).norm()),
                                    std::abs((b - d_next).norm() - (b - d).norm()));
      done = moved < 10.0 * cfg.conv_tol;
    }
    c = c_next;
    d = d_next;
    trace.pairs.push_back({c, d});
    if (done) {
      trace.converged = true;
      trace.limit = {c, d};
      return trace;
    }
  }
  trace.limit = {c, d};
  throw NotConvergedError(std::move(trace));
}

ErrorPair lagrange_residual(const BlochVector& a, const BlochVector& b, const BlochVector& c,
                            const BlochVector& d) {
  const double m = c.dot(d);
  auto sine = [](const BlochVector& u, const BlochVector& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu < 1e-15 || nv < 1e-15) {
      throw std::domain_error("lagrange_residual: degenerate zero vector");
    }
    return u.cross(v).norm() / (nu * nv);
  };
  return {sine(a - c, c - m * d), sine(b - d, d - m * c)};
}

ApproximatorPair sample_compatible_pair(SampleRng& rng) {
  const BlochVector c = rng.in_ball();
  const BlochVector d = rng.in_ball();
  const double sum = (c + d).norm() + (c - d).norm();
  if (sum <= 2.0) return {c, d};
  const double s = 2.0 / sum;
  return {s * c, s * d};
}

ApproximatorPair standard_targets(double theta) {
  return {BlochVector::unit_x(), BlochVector(std::cos(theta), std::sin(theta), 0.0)};
}

std::vector<ErrorPoint> sample_admissible_region(Measure measure, double theta, int n_samples,
                                                 const OptimizerConfig& cfg) {
  GeometryAngles{theta, 0.0}.validate();
  if (n_samples < 1) throw std::invalid_argument("sample_admissible_region: n_samples must be >= 1");
  const auto [a, b] = standard_targets(theta);
  SampleRng rng(cfg.seed);
  std::vector<ErrorPoint> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const auto [c, d] = sample_compatible_pair(rng);
    if (measure == Measure::metric_d) {
      out.emplace_back((a - c).norm(), (b - d).norm(), measure);
    } else {
      out.emplace_back(noise_symmetric(a, c), noise_symmetric(b, d), measure);
    }
  }
  return out;
}

double boundary_margin(const ErrorPoint& p, double theta) {
  return p.measure == Measure::metric_d ? metric_boundary_margin(theta, p.e_a, p.e_b)
                                        : noise_boundary_margin(theta, p.e_a, p.e_b);
}

OracleResult grid_oracle_min(const BlochVector& c, const BlochVector& b, Measure objective, int grid_n) {
  if (grid_n < 32) throw std::invalid_argument("grid_oracle_min: grid_n must be at least 32");
  require_direction(c, "grid_oracle_min");
  require_unit(b, "grid_oracle_min");

  const EllipsoidFrame f = frame_for(c, b);
  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<double> cos_u(n + 1), sin_u(n + 1), cos_v(n), sin_v(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    cos_u[i] = std::cos(u);
    sin_u[i] = std::sin(u);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double v = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    cos_v[j] = std::cos(v);
    sin_v[j] = std::sin(v);
  }

  OracleResult best{BlochVector{}, objective_value(objective, b, BlochVector{})};
  for (std::size_t i = 0; i <= n; ++i) {
    const BlochVector along = f.major * cos_u[i] * f.axis;
    const double radial = f.minor * sin_u[i];
    for (std::size_t j = 0; j < n; ++j) {
      const BlochVector surface =
          along + radial * (cos_v[j] * f.first_perp + sin_v[j] * f.second_perp);
      for (int k = 1; k <= kOracleShells; ++k) {
        const BlochVector d = (static_cast<double>(k) / kOracleShells) * surface;
        const double value = objective_value(objective, b, d);
        if (value < best.value) best = {d, value};
      }
    }
  }
  return best;
}

}  // namespace qmu
