#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qmu/optimize.hpp"
#include "qmu/qubit.hpp"

namespace qmu::testing {

inline constexpr double kNum = 1e-9;

inline BlochVector random_unit(SampleRng& rng) {
  for (;;) {
    const BlochVector v = rng.in_ball();
    if (v.norm() > 0.1) return v.normalized();
  }
}

inline BlochVector random_in_plane_unit(SampleRng& rng) {
  const double t = rng.uniform(0.0, 2.0 * 3.141592653589793);
  return {std::cos(t), std::sin(t), 0.0};
}

inline DichotomicPovm random_dichotomic(SampleRng& rng) {
  const BlochVector c = rng.in_ball();
  const double room = 1.0 - c.norm();
  return DichotomicPovm(rng.uniform(-room, room), c);
}

inline DensityOperator random_state(SampleRng& rng) { return DensityOperator(rng.in_ball()); }

// Independent 2x2 construction from the Pauli matrices.
inline Eigen::Matrix2cd pauli_form(const QubitOperator& op) {
  using C = std::complex<double>;
  Eigen::Matrix2cd id, sx, sy, sz;
  id << 1, 0, 0, 1;
  sx << 0, 1, 1, 0;
  sy << 0, C(0, -1), C(0, 1), 0;
  sz << 1, 0, 0, -1;
  return 0.5 * (op.alpha * id + op.vec.x() * sx + op.vec.y() * sy + op.vec.z() * sz);
}

inline Eigen::Vector2d eigenvalues(const QubitOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(pauli_form(op));
  return solver.eigenvalues();
}

inline bool near(const BlochVector& u, const BlochVector& v, double tol = kNum) { return (u - v).norm() <= tol; }

// Random POVM with n outcomes labelled 0..n-1.
inline DiscretePovm random_discrete(SampleRng& rng, int n) {
  std::vector<QubitOperator> parts;
  QubitOperator sum = QubitOperator::zero();
  for (int i = 0; i < n; ++i) {
    const QubitOperator p{1.0, random_unit(rng)};
    parts.push_back(rng.uniform(0.1, 1.0) * p);
    sum += parts.back();
  }
  // E_i = t P_i + (I - t S)/n with t S <= I
  const double t = 1.0 / sum.max_eigenvalue();
  std::vector<Effect> effects;
  std::vector<double> labels;
  const QubitOperator rest = (QubitOperator::identity() - t * sum) * (1.0 / n);
  for (int i = 0; i < n; ++i) {
    effects.emplace_back(t * parts[static_cast<std::size_t>(i)] + rest);
    labels.push_back(static_cast<double>(i));
  }
  return DiscretePovm(std::move(labels), std::move(effects));
}

}  // namespace qmu::testing
