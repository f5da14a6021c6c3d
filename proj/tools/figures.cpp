#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmu/bounds.hpp"
#include "qmu/compat.hpp"
#include "qmu/errors.hpp"
#include "qmu/optimize.hpp"

namespace qmu::cli {

namespace {

constexpr double kCheckTol = 1e-9;

double grid_point(double hi, int k, int n) { return k == n - 1 ? hi : hi * k / (n - 1); }

std::string theta_tag(double theta) {
  const int twelfths = static_cast<int>(std::lround(theta * 12.0 / std::numbers::pi));
  return "theta=" + std::to_string(twelfths) + "pi/12";
}

}  // namespace

bool FigureData::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Assertion& a) { return a.pass; });
}

std::vector<double> comparison_thetas() {
  std::vector<double> out;
  for (int k = 1; k <= 6; ++k) out.push_back(k == 6 ? kHalfPi : k * std::numbers::pi / 12.0);
  return out;
}

FigureData figure_branches(int n_phi) {
  FigureData fig;
  fig.name = "figure-1";
  fig.table.columns = {"mu", "nu", "theta", "phi", "M2", "d_a", "d_b", "u_c", "u_d"};
  double form_gap = 0.0;
  double lowest = 0.0;
  for (double theta : {std::numbers::pi / 6.0, std::numbers::pi / 4.0, std::numbers::pi / 3.0}) {
    for (int mu : {1, -1}) {
      for (int nu : {1, -1}) {
        for (int k = 0; k < n_phi; ++k) {
          const BoundaryPoint p = yu_oh_point(theta, grid_point(kHalfPi, k, n_phi), mu, nu);
          fig.table.rows.push_back({double(mu), double(nu), p.theta, p.phi, p.m_squared, p.d_a, p.d_b, p.u_c, p.u_d});
          if (mu == 1 && nu == 1) {
            const double sp = std::sin(p.phi);
            const double cp = std::cos(p.phi);
            form_gap = std::max({form_gap, std::abs(std::sqrt(1.0 - p.m_squared * cp * cp) - sp - p.d_a),
                                 std::abs(std::sqrt(1.0 - p.m_squared * sp * sp) - cp - p.d_b)});
            lowest = std::min({lowest, p.d_a, p.d_b});
          }
        }
      }
    }
  }
  fig.checks.push_back(make_assertion("minimum branch closed form matches root form", 0.0, form_gap, kCheckTol,
                                      Relation::equal, "branch formulas"));
  fig.checks.push_back(make_assertion("minimum branch errors nonnegative", 0.0, lowest, kCheckTol,
                                      Relation::greater_equal, "branch formulas"));
  return fig;
}

FigureData figure_unsharpness(int n_phi) {
  FigureData fig;
  fig.name = "figure-2";
  fig.table.columns = {"theta", "phi", "u_c", "u_d", "d_a", "d_b", "residual"};
  double worst_residual = 0.0;
  double worst_roundtrip = 0.0;
  for (double theta : comparison_thetas()) {
    for (int k = 0; k < n_phi; ++k) {
      const BoundaryPoint p = yu_oh_point(theta, grid_point(kHalfPi, k, n_phi));
      const double r = unsharpness_tradeoff_residual(theta, p.phi);
      const ErrorPair back = yu_oh_from_unsharpness(p.u_c, p.u_d, theta);
      worst_residual = std::max(worst_residual, std::abs(r));
      worst_roundtrip = std::max({worst_roundtrip, std::abs(back.first - p.d_a), std::abs(back.second - p.d_b)});
      fig.table.rows.push_back({theta, p.phi, p.u_c, p.u_d, p.d_a, p.d_b, r});
    }
  }
  fig.checks.push_back(make_assertion("unsharpness tradeoff residual", 0.0, worst_residual, kCheckTol,
                                      Relation::equal, "unsharpness tradeoff on the boundary"));
  fig.checks.push_back(make_assertion("errors recovered from unsharpness", 0.0, worst_roundtrip, kCheckTol,
                                      Relation::equal, "boundary in unsharpness coordinates"));
  return fig;
}

FigureData figure_family_endpoints(int n_psi) {
  FigureData fig;
  fig.name = "figure-4";
  fig.table.columns = {"psi", "lambda", "c_x", "c_y", "d_x", "d_y", "eps_a", "eps_b", "lhs", "compat_violation"};
  const BlochVector a = BlochVector::unit_x();
  const BlochVector b = BlochVector::unit_y();
  double worst_lhs = 0.0;
  double worst_compat = -1.0;
  for (int k = 0; k < n_psi; ++k) {
    const double psi = grid_point(kHalfPi, k, n_psi);
    const BlochVector m(std::cos(psi), std::sin(psi), 0.0);
    for (double lambda : {0.0, 1.0}) {
      const auto [c, d] = branciard_family(a, b, m, lambda);
      const double ea = noise_symmetric(a, c);
      const double eb = noise_symmetric(b, d);
      const double lhs = branciard_lhs(ea, eb, kHalfPi);
      const double residual = compatibility_violation(c, d);
      worst_lhs = std::max(worst_lhs, std::abs(lhs - 1.0));
      worst_compat = std::max(worst_compat, residual);
      fig.table.rows.push_back({psi, lambda, c.x(), c.y(), d.x(), d.y(), ea, eb, lhs, residual});
    }
  }
  fig.checks.push_back(make_assertion("family saturates the noise bound", 0.0, worst_lhs, kCheckTol,
                                      Relation::equal, "saturating family for orthogonal targets"));
  fig.checks.push_back(make_assertion("family is jointly measurable", 0.0, worst_compat, kCheckTol,
                                      Relation::less_equal, "saturating family for orthogonal targets"));
  return fig;
}

FigureData figure_metric_comparison(int n) {
  FigureData fig;
  fig.name = "figure-5";
  fig.table.columns = {"theta", "k", "br_d_a", "br_d_b", "yo_d_a", "yo_d_b", "matched_yo_d_b", "gap"};
  for (double theta : comparison_thetas()) {
    double min_interior = 1e300;
    double endpoint_gap = 0.0;
    for (int k = 0; k < n; ++k) {
      const ErrorPair br = branciard_metric_errors(theta, grid_point(theta, k, n));
      const BoundaryPoint yo = yu_oh_point(theta, grid_point(kHalfPi, k, n));
      const double matched = yu_oh_lower_envelope(theta, br.first);
      const double gap = br.second - matched;
      if (k == 0) endpoint_gap = gap;
      if (k > 0 && k < n - 1) min_interior = std::min(min_interior, gap);
      fig.table.rows.push_back({theta, double(k), br.first, br.second, yo.d_a, yo.d_b, matched, gap});
    }
    const std::string tag = theta_tag(theta);
    fig.checks.push_back(make_assertion("sharp scheme above boundary inside, " + tag, 0.0, min_interior, 0.0,
                                        Relation::greater, "metric errors of the sharp scheme"));
    fig.checks.push_back(make_assertion("endpoint gap 2sin(theta/2)-sin(theta), " + tag,
                                        2.0 * std::sin(0.5 * theta) - std::sin(theta), endpoint_gap, kCheckTol,
                                        Relation::equal, "metric errors of the sharp scheme"));
  }
  return fig;
}

FigureData figure_noise_comparison(int n_phi) {
  FigureData fig;
  fig.name = "figure-6";
  fig.table.columns = {"theta", "phi", "eps_a", "eps_b", "lhs", "rhs", "margin"};
  for (double theta : comparison_thetas()) {
    const auto [a, b] = standard_targets(theta);
    double min_margin = 1e300;
    double max_margin = -1e300;
    for (int k = 0; k < n_phi; ++k) {
      const double phi = grid_point(kHalfPi, k, n_phi);
      const auto [c, d] = yu_oh_optimal_vectors(a, b, phi);
      const double ea = noise_symmetric(a, c);
      const double eb = noise_symmetric(b, d);
      const double lhs = branciard_lhs(ea, eb, theta);
      const double rhs = std::sin(theta) * std::sin(theta);
      min_margin = std::min(min_margin, lhs - rhs);
      max_margin = std::max(max_margin, lhs - rhs);
      fig.table.rows.push_back({theta, phi, ea, eb, lhs, rhs, lhs - rhs});
    }
    const std::string tag = theta_tag(theta);
    fig.checks.push_back(make_assertion("noise bound holds, " + tag, 0.0, min_margin, kCheckTol,
                                        Relation::greater_equal, "noise tradeoff"));
    if (theta >= kHalfPi) {
      fig.checks.push_back(make_assertion("metric optimum saturates noise bound, " + tag, 0.0, max_margin,
                                          kCheckTol, Relation::equal, "orthogonal targets"));
    } else {
      fig.checks.push_back(make_assertion("metric optimum strictly above noise bound, " + tag, 0.0, max_margin,
                                          1e-6, Relation::greater, "non-orthogonal targets"));
    }
  }
  return fig;
}

FigureData figure(int id) {
  switch (id) {
    case 1:
      return figure_branches();
    case 2:
      return figure_unsharpness();
    case 4:
      return figure_family_endpoints();
    case 5:
      return figure_metric_comparison();
    case 6:
      return figure_noise_comparison();
    default:
      throw std::invalid_argument("unknown figure " + std::to_string(id) + " (expected 1, 2, 4, 5 or 6)");
  }
}

}  // namespace qmu::cli
