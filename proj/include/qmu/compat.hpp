#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "qmu/qubit.hpp"

namespace qmu {

/// Raised when a joint observable is requested for an incompatible pair.
class IncompatibleError : public std::domain_error {
 public:
  explicit IncompatibleError(double violation);
  /// |c + d| + |c - d| - 2, strictly positive.
  double violation() const { return violation_; }

 private:
  double violation_;
};

/// Joint measurability of two symmetric dichotomic POVMs with directions
/// c and d: |c + d| + |c - d| <= 2 (accepting kPositivityTol overshoot).
/// Throws std::invalid_argument if either direction is longer than 1.
bool compatible(const BlochVector& c, const BlochVector& d);

/// |c + d| + |c - d| - 2; nonpositive exactly when compatible.
double compatibility_violation(const BlochVector& c, const BlochVector& d);

/// |c|^2 + |d|^2 - 1 - (c . d)^2. Vanishes on the saturated boundary.
double compat_boundary_residual(const BlochVector& c, const BlochVector& d);

/// Joint observable J(k, l) = 1/4 (1 + k l M) I + 1/4 (k c + l d) . sigma
/// with M = c . d, for k, l in {+1, -1}.
class JointObservable {
 public:
  const Effect& effect(Sign k, Sign l) const { return effects_[index(k, l)]; }
  double mixing() const { return mixing_; }
  const BlochVector& c() const { return c_; }
  const BlochVector& d() const { return d_; }

  /// Sum over l of J(k, l): the POVM with direction c.
  DichotomicPovm first_marginal() const;
  /// Sum over k of J(k, l): the POVM with direction d.
  DichotomicPovm second_marginal() const;

 private:
  friend JointObservable joint_observable(const BlochVector& c, const BlochVector& d);
  JointObservable(BlochVector c, BlochVector d, double mixing, std::array<Effect, 4> effects)
      : c_(c), d_(d), mixing_(mixing), effects_(effects) {}
  static std::size_t index(Sign k, Sign l) {
    return (k == Sign::plus ? 0u : 2u) + (l == Sign::plus ? 0u : 1u);
  }

  BlochVector c_;
  BlochVector d_;
  double mixing_;
  std::array<Effect, 4> effects_;
};

/// Throws IncompatibleError carrying the violation amount when the pair is
/// not jointly measurable.
JointObservable joint_observable(const BlochVector& c, const BlochVector& d);

/// Relabeling function from the outcomes of a DiscretePovm to real values.
class OutcomeMap {
 public:
  OutcomeMap() = default;
  OutcomeMap(std::initializer_list<std::pair<const double, double>> table) : table_(table) {}
  explicit OutcomeMap(std::map<double, double> table) : table_(std::move(table)) {}

  /// Map given as values aligned with the outcome order of `povm`.
  static OutcomeMap from_values(const DiscretePovm& povm, std::span<const double> values);
  static OutcomeMap identity(const DiscretePovm& povm);
  static OutcomeMap constant(const DiscretePovm& povm, double value);

  void set(double label, double value) { table_[label + 0.0] = value; }
  bool is_total_on(const DiscretePovm& povm) const;
  /// Throws std::out_of_range for labels outside the table.
  double operator()(double label) const;
  const std::map<double, double>& table() const { return table_; }

  /// (this o inner)(m) = this(inner(m)).
  OutcomeMap after(const OutcomeMap& inner) const;

 private:
  std::map<double, double> table_;
};

/// Coarse-grained POVM with effects C(v) = sum over f(m) = v of E(m). The
/// outcome set is the image f(Omega), in order of first appearance.
DiscretePovm post_process(const DiscretePovm& e, const OutcomeMap& f);

/// Joint POVM on f(Omega) x g(Omega) built from a single measured POVM.
/// Cells whose preimage is empty carry explicit zero effects.
struct JointPovm {
  std::vector<double> first_outcomes;
  std::vector<double> second_outcomes;
  /// effects[i][j] belongs to (first_outcomes[i], second_outcomes[j]).
  std::vector<std::vector<Effect>> effects;

  DiscretePovm first_marginal() const;
  DiscretePovm second_marginal() const;
};

JointPovm joint_from_functions(const DiscretePovm& e, const OutcomeMap& f, const OutcomeMap& g);

/// sqrt(1 - |c|^2); 0 for sharp, 1 for trivial observables.
double unsharpness(const BlochVector& c);

/// Norm of [C_+, D_+] for symmetric POVMs with directions c and d,
/// i.e. |c x d| / 2.
double commutator_norm(const BlochVector& c, const BlochVector& d);

}  // namespace qmu
