#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmu/compat.hpp"
#include "qmu/errors.hpp"
#include "qmu/qubit.hpp"

namespace qmu {

inline constexpr double kProbabilityTol = 1e-12;

enum class Relation { equal, greater, greater_equal, less_equal };

struct Assertion {
  std::string label;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::equal;
  bool pass = false;
  std::string provenance;
};

/// Checks `actual` against `expected` under `relation` and records the result.
/// equal: |actual - expected| <= tol; greater: actual > expected + tol;
/// greater_equal: actual >= expected - tol; less_equal: actual <= expected + tol.
Assertion make_assertion(std::string label, double expected, double actual, double tol,
                         Relation relation, std::string provenance);

struct CounterexampleReport {
  std::string name;
  /// Named operators in Bloch form (alpha, vec); states appear as (1, r).
  std::vector<std::pair<std::string, QubitOperator>> inputs;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<Assertion> assertions;

  bool all_passed() const;
};

/// eps^2 of approx against an arbitrary self-adjoint target operator, i.e.
/// tr[rho (C[2] - C[1] A - A C[1] + A^2)].
double noise_squared_against(const QubitOperator& target, const DiscretePovm& approx,
                             const DensityOperator& state);

/// f(m) = tr[rho {E(m), A}] / (2 tr[rho E(m)]), the relabeling of E that
/// minimizes the noise against A in state rho.
/// Throws std::domain_error naming the first outcome with probability at
/// most kProbabilityTol.
OutcomeMap hall_optimal_f(const DiscretePovm& e, const QubitOperator& target, const DensityOperator& state);

CounterexampleReport run_three_outcome_example();
CounterexampleReport run_biased_zero_noise();
CounterexampleReport run_n_outcome_commuting();
CounterexampleReport run_ebar_discontinuity();

/// Ids accepted by run_example: three-outcome, biased, n-outcome, ebar.
const std::vector<std::string>& example_ids();
/// Throws std::invalid_argument for unknown ids.
CounterexampleReport run_example(const std::string& id);

}  // namespace qmu
