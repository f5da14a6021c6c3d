#pragma once

// Explicit complex matrix form of Bloch operators, used where products of
// non-commuting operators have to be formed directly.

#include <complex>

#include <Eigen/Core>

#include "qmu/qubit.hpp"

namespace qmu::detail {

using Matrix2c = Eigen::Matrix2cd;

inline Matrix2c to_matrix(const QubitOperator& op) {
  using namespace std::complex_literals;
  const double x = op.vec.x();
  const double y = op.vec.y();
  const double z = op.vec.z();
  Matrix2c m;
  m << op.alpha + z, x - 1i * y, x + 1i * y, op.alpha - z;
  return 0.5 * m;
}

}  // namespace qmu::detail
