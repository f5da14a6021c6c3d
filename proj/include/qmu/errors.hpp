#pragma once

#include <string_view>

#include "qmu/qubit.hpp"

namespace qmu {

/// Eigenstate gate for the local uniform error: |r -+ a| <= this.
inline constexpr double kEigenstateTol = 1e-10;

enum class Measure { metric_d, noise_eps };

std::string_view to_string(Measure m);
/// Accepts "metric" / "noise" (and the enum spellings). Throws
/// std::invalid_argument otherwise.
Measure parse_measure(std::string_view s);

/// One error value per target observable, tagged with the measure used.
struct ErrorPoint {
  double e_a = 0.0;
  double e_b = 0.0;
  Measure measure = Measure::metric_d;

  ErrorPoint() = default;
  ErrorPoint(double a, double b, Measure m);
};

// Metric error (probabilistic distance)

/// 2 |A_+ - C_+| = |gamma_A - gamma_C| + |a - c|.
double metric_error_dichotomic(const DichotomicPovm& target, const DichotomicPovm& approx);

/// 2 max over nonempty proper subsets X of |sum_{i in X} (A_i - C_i)|.
/// Effects are paired by label; throws std::invalid_argument if the outcome
/// sets differ or have more than 16 elements.
double metric_error_general(const DiscretePovm& target, const DiscretePovm& approx);

// Noise measure

/// eps^2 = tr[rho (C[2] - C[1] A - A C[1] + A^2)] with A the first moment
/// of the (sharp) target. Labels of `approx` are free; this is the only
/// route available when the two outcome sets differ.
double noise_squared(const DiscretePovm& target, const DiscretePovm& approx,
                     const DensityOperator& state);
double noise_general(const DiscretePovm& target, const DiscretePovm& approx,
                     const DensityOperator& state);

/// Value-comparison form sum_ij (a_i - a_j)^2 Re tr[rho A_i C_j], evaluated
/// with explicit complex 2x2 matrices. Requires identical outcome sets.
/// Agrees with noise_squared for sharp targets.
double noise_squared_value_comparison(const DiscretePovm& target, const DiscretePovm& approx,
                                      const DensityOperator& state);

/// Symmetric closed form |a - c|^2 + 1 - |c|^2, state independent.
double noise_symmetric_squared(const BlochVector& a, const BlochVector& c);
double noise_symmetric(const BlochVector& a, const BlochVector& c);

/// Biased dichotomic approximator: 2 (1 - a . (c + gamma r)).
double noise_biased_squared(const BlochVector& a, const DichotomicPovm& approx,
                            const DensityOperator& state);
double noise_biased(const BlochVector& a, const DichotomicPovm& approx, const DensityOperator& state);

/// Local uniform error. On eigenstates of the target (r = +-a within
/// kEigenstateTol) it equals the noise; elsewhere it is the state-independent
/// maximum 2 (1 - a . c + |gamma|).
double local_uniform_error_squared(const BlochVector& a, const DichotomicPovm& approx,
                                   const DensityOperator& state);
double local_uniform_error(const BlochVector& a, const DichotomicPovm& approx,
                           const DensityOperator& state);

}  // namespace qmu
