#include "qmu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "complex2x2.hpp"

namespace qmu {

namespace {

double root(double squared) { return std::sqrt(std::max(0.0, squared)); }

void require_unit(const BlochVector& a, const char* what) {
  if (std::abs(a.norm() - 1.0) > kPositivityTol) {
    throw std::invalid_argument(std::string(what) + ": target direction must be a unit vector");
  }
}

// approx effects reordered to follow the target's outcome order
std::vector<QubitOperator> aligned_effects(const DiscretePovm& target, const DiscretePovm& approx,
                                           const char* what) {
  if (target.size() != approx.size()) {
    throw std::invalid_argument(std::string(what) + ": outcome sets differ");
  }
  std::vector<QubitOperator> out;
  out.reserve(target.size());
  for (double label : target.outcomes()) {
    if (!approx.has_outcome(label)) {
      throw std::invalid_argument(std::string(what) + ": outcome sets differ");
    }
    out.push_back(approx.effect_for(label).op());
  }
  return out;
}

}  // namespace

std::string_view to_string(Measure m) {
  return m == Measure::metric_d ? "metric" : "noise";
}

Measure parse_measure(std::string_view s) {
  if (s == "metric" || s == "metric_d" || s == "D") return Measure::metric_d;
  if (s == "noise" || s == "noise_eps" || s == "eps") return Measure::noise_eps;
  throw std::invalid_argument("unknown measure '" + std::string(s) + "'");
}

ErrorPoint::ErrorPoint(double a, double b, Measure m) : e_a(a), e_b(b), measure(m) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("ErrorPoint: negative error value");
}

double metric_error_dichotomic(const DichotomicPovm& target, const DichotomicPovm& approx) {
  const QubitOperator diff = effect_of(target, Sign::plus).op() - effect_of(approx, Sign::plus).op();
  return 2.0 * operator_norm(diff);
}

double metric_error_general(const DiscretePovm& target, const DiscretePovm& approx) {
  const auto c = aligned_effects(target, approx, "metric_error_general");
  const std::size_t n = target.size();
  if (n > 16) throw std::invalid_argument("metric_error_general: more than 16 outcomes");
  std::vector<QubitOperator> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = target.effect(i).op() - c[i];

  double best = 0.0;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    QubitOperator s = QubitOperator::zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s += diff[i];
    }
    best = std::max(best, operator_norm(s));
  }
  return 2.0 * best;
}

double noise_squared(const DiscretePovm& target, const DiscretePovm& approx,
                     const DensityOperator& state) {
  const QubitOperator a = moment(target, 1);
  const QubitOperator c1 = moment(approx, 1);
  const QubitOperator c2 = moment(approx, 2);
  const QubitOperator n = c2 - 2.0 * jordan_product(c1, a) + square(a);
  return n.expectation(state);
}

double noise_general(const DiscretePovm& target, const DiscretePovm& approx,
                     const DensityOperator& state) {
  return root(noise_squared(target, approx, state));
}

double noise_squared_value_comparison(const DiscretePovm& target, const DiscretePovm& approx,
                                      const DensityOperator& state) {
  const auto c = aligned_effects(target, approx, "noise_squared_value_comparison");
  const detail::Matrix2c rho = detail::to_matrix(state.op());
  double sum = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const detail::Matrix2c ai = detail::to_matrix(target.effect(i).op());
    for (std::size_t j = 0; j < target.size(); ++j) {
      const double gap = target.outcome(i) - target.outcome(j);
      if (gap == 0.0) continue;
      const detail::Matrix2c cj = detail::to_matrix(c[j]);
      sum += gap * gap * (rho * ai * cj).trace().real();
    }
  }
  return sum;
}

double noise_symmetric_squared(const BlochVector& a, const BlochVector& c) {
  require_unit(a, "noise_symmetric");
  if (c.norm() > 1.0 + kPositivityTol) throw std::invalid_argument("noise_symmetric: |c| > 1");
  return (a - c).norm_squared() + 1.0 - c.norm_squared();
}

double noise_symmetric(const BlochVector& a, const BlochVector& c) {
  return root(noise_symmetric_squared(a, c));
}

double noise_biased_squared(const BlochVector& a, const DichotomicPovm& approx,
                            const DensityOperator& state) {
  require_unit(a, "noise_biased");
  return 2.0 * (1.0 - a.dot(approx.c() + approx.gamma() * state.r()));
}

double noise_biased(const BlochVector& a, const DichotomicPovm& approx, const DensityOperator& state) {
  return root(noise_biased_squared(a, approx, state));
}

double local_uniform_error_squared(const BlochVector& a, const DichotomicPovm& approx,
                                   const DensityOperator& state) {
  require_unit(a, "local_uniform_error");
  const BlochVector& r = state.r();
  if ((r - a).norm() <= kEigenstateTol || (r + a).norm() <= kEigenstateTol) {
    return noise_biased_squared(a, approx, state);
  }
  return 2.0 * (1.0 - a.dot(approx.c()) + std::abs(approx.gamma()));
}

double local_uniform_error(const BlochVector& a, const DichotomicPovm& approx,
                           const DensityOperator& state) {
  return root(local_uniform_error_squared(a, approx, state));
}

}  // namespace qmu
