#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qmu/bloch_vector.hpp"

namespace qmu {

class DensityOperator;

/// Hermitian 2x2 operator in Bloch form, A = 1/2 (alpha I + vec . sigma).
///
/// Eigenvalues are 1/2 (alpha +- |vec|). The representation is closed under
/// sums, real scalings and the Jordan product, which is all the algebra the
/// error measures need.
struct QubitOperator {
  double alpha = 0.0;
  BlochVector vec;

  static QubitOperator identity() { return {2.0, {}}; }
  static QubitOperator zero() { return {0.0, {}}; }

  double min_eigenvalue() const { return 0.5 * (alpha - vec.norm()); }
  double max_eigenvalue() const { return 0.5 * (alpha + vec.norm()); }
  double trace() const { return alpha; }

  /// tr[rho A] = 1/2 (alpha + vec . r).
  double expectation(const DensityOperator& rho) const;

  QubitOperator& operator+=(const QubitOperator& o) {
    alpha += o.alpha;
    vec += o.vec;
    return *this;
  }
  QubitOperator& operator-=(const QubitOperator& o) {
    alpha -= o.alpha;
    vec -= o.vec;
    return *this;
  }
  QubitOperator& operator*=(double s) {
    alpha *= s;
    vec *= s;
    return *this;
  }
  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, double s) { return a *= s; }
  friend QubitOperator operator*(double s, QubitOperator a) { return a *= s; }
  friend bool operator==(const QubitOperator&, const QubitOperator&) = default;
};

/// Symmetrized product 1/2 (AB + BA). Hermitian whenever A and B are.
QubitOperator jordan_product(const QubitOperator& a, const QubitOperator& b);

/// A^2, equal to jordan_product(a, a).
QubitOperator square(const QubitOperator& a);

/// Operator norm (largest absolute eigenvalue): 1/2 (|alpha| + |vec|).
double operator_norm(const QubitOperator& op);

/// Norm of the commutator [A, B]; for Bloch forms this is 1/2 |a x b|.
double commutator_norm(const QubitOperator& a, const QubitOperator& b);

/// An operator with 0 <= E <= I, i.e. |vec| <= min(alpha, 2 - alpha).
class Effect {
 public:
  /// Throws std::invalid_argument if the positivity bounds fail by more
  /// than kPositivityTol.
  explicit Effect(QubitOperator op);
  Effect(double alpha, BlochVector vec) : Effect(QubitOperator{alpha, vec}) {}

  static bool is_valid(const QubitOperator& op, double tol = kPositivityTol);

  const QubitOperator& op() const { return op_; }
  double alpha() const { return op_.alpha; }
  const BlochVector& vec() const { return op_.vec; }

  friend bool operator==(const Effect&, const Effect&) = default;

 private:
  QubitOperator op_;
};

/// rho = 1/2 (I + r . sigma) with |r| <= 1.
class DensityOperator {
 public:
  explicit DensityOperator(BlochVector r);

  static DensityOperator maximally_mixed() { return DensityOperator(BlochVector{}); }

  const BlochVector& r() const { return r_; }
  QubitOperator op() const { return {1.0, r_}; }
  bool is_pure(double tol = kPositivityTol) const { return std::abs(r_.norm() - 1.0) <= tol; }

 private:
  BlochVector r_;
};

enum class Sign : int { plus = 1, minus = -1 };

inline double to_value(Sign s) { return static_cast<double>(static_cast<int>(s)); }

/// +-1 valued POVM with effects C_+- = 1/2 ((1 +- gamma) I +- c . sigma).
class DichotomicPovm {
 public:
  /// Requires |gamma| + |c| <= 1 (within kPositivityTol).
  DichotomicPovm(double gamma, BlochVector c);

  /// Unbiased POVM with direction c.
  static DichotomicPovm symmetric(BlochVector c) { return DichotomicPovm(0.0, c); }

  double gamma() const { return gamma_; }
  const BlochVector& c() const { return c_; }
  bool is_symmetric() const { return gamma_ == 0.0; }
  bool is_sharp(double tol = kPositivityTol) const {
    return is_symmetric() && std::abs(c_.norm() - 1.0) <= tol;
  }

 private:
  double gamma_;
  BlochVector c_;
};

/// N-outcome qubit POVM with distinct real outcome labels.
class DiscretePovm {
 public:
  /// Throws std::invalid_argument on length mismatch, duplicate or
  /// non-finite labels, an empty outcome set, or effects that do not sum
  /// to the identity within kPositivityTol.
  DiscretePovm(std::vector<double> outcomes, std::vector<Effect> effects);

  std::size_t size() const { return outcomes_.size(); }
  std::span<const double> outcomes() const { return outcomes_; }
  std::span<const Effect> effects() const { return effects_; }
  double outcome(std::size_t i) const { return outcomes_.at(i); }
  const Effect& effect(std::size_t i) const { return effects_.at(i); }

  bool has_outcome(double label) const;
  /// Index of the effect carrying `label`. Throws std::out_of_range if the
  /// label is not an outcome of this POVM.
  std::size_t index_of(double label) const;
  const Effect& effect_for(double label) const { return effects_[index_of(label)]; }

 private:
  std::vector<double> outcomes_;
  std::vector<Effect> effects_;
};

Effect effect_of(const DichotomicPovm& povm, Sign sign);

/// The same POVM as a two-outcome DiscretePovm with labels (+1, -1).
DiscretePovm to_discrete(const DichotomicPovm& povm);

/// Inverse of to_discrete. Throws std::invalid_argument unless the outcome
/// set is exactly {+1, -1}.
DichotomicPovm to_dichotomic(const DiscretePovm& povm);

/// Sharp +-1 observable along the unit vector `a`.
DichotomicPovm sharp_observable(const BlochVector& a);

/// Born rule tr[rho E_outcome]. Throws std::out_of_range for an unknown label.
double probability(const DiscretePovm& povm, double outcome, const DensityOperator& state);
double probability(const DichotomicPovm& povm, Sign outcome, const DensityOperator& state);

/// k-th moment operator sum_i m_i^k E_i (k >= 1).
QubitOperator moment(const DiscretePovm& povm, int k);
QubitOperator moment(const DichotomicPovm& povm, int k);

}  // namespace qmu
