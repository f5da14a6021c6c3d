#include "qmu/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qmu {

double QubitOperator::expectation(const DensityOperator& rho) const {
  return 0.5 * (alpha + vec.dot(rho.r()));
}

QubitOperator jordan_product(const QubitOperator& a, const QubitOperator& b) {
  // 1/2 {A, B} = 1/4 ((ab + a.b) I + (a vb + b va) . sigma)
  return {0.5 * (a.alpha * b.alpha + a.vec.dot(b.vec)),
          0.5 * (a.alpha * b.vec + b.alpha * a.vec)};
}

QubitOperator square(const QubitOperator& a) { return jordan_product(a, a); }

double operator_norm(const QubitOperator& op) {
  return 0.5 * (std::abs(op.alpha) + op.vec.norm());
}

double commutator_norm(const QubitOperator& a, const QubitOperator& b) {
  // [A, B] = (i/2) (a x b) . sigma
  return 0.5 * a.vec.cross(b.vec).norm();
}

bool Effect::is_valid(const QubitOperator& op, double tol) {
  const double n = op.vec.norm();
  return n <= std::min(op.alpha, 2.0 - op.alpha) + tol;
}

Effect::Effect(QubitOperator op) : op_(op) {
  if (!is_valid(op_)) {
    throw std::invalid_argument("Effect: operator is not between 0 and I (alpha=" +
                                std::to_string(op.alpha) +
                                ", |vec|=" + std::to_string(op.vec.norm()) + ")");
  }
}

DensityOperator::DensityOperator(BlochVector r) : r_(r) {
  if (r_.norm() > 1.0 + kPositivityTol) {
    throw std::invalid_argument("DensityOperator: |r| exceeds 1");
  }
}

DichotomicPovm::DichotomicPovm(double gamma, BlochVector c) : gamma_(gamma + 0.0), c_(c) {
  if (!std::isfinite(gamma)) throw std::invalid_argument("DichotomicPovm: non-finite bias");
  if (std::abs(gamma_) + c_.norm() > 1.0 + kPositivityTol) {
    throw std::invalid_argument("DichotomicPovm: |gamma| + |c| exceeds 1");
  }
}

DiscretePovm::DiscretePovm(std::vector<double> outcomes, std::vector<Effect> effects)
    : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
  if (outcomes_.empty()) throw std::invalid_argument("DiscretePovm: no outcomes");
  if (outcomes_.size() != effects_.size()) {
    throw std::invalid_argument("DiscretePovm: outcome and effect counts differ");
  }
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (!std::isfinite(outcomes_[i])) throw std::invalid_argument("DiscretePovm: non-finite label");
    outcomes_[i] += 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      if (outcomes_[j] == outcomes_[i]) {
        throw std::invalid_argument("DiscretePovm: duplicate outcome label " +
                                    std::to_string(outcomes_[i]));
      }
    }
  }
  QubitOperator total = QubitOperator::zero();
  for (const auto& e : effects_) total += e.op();
  if (std::abs(total.alpha - 2.0) > kPositivityTol || total.vec.norm() > kPositivityTol) {
    throw std::invalid_argument("DiscretePovm: effects do not sum to the identity");
  }
}

bool DiscretePovm::has_outcome(double label) const {
  return std::find(outcomes_.begin(), outcomes_.end(), label) != outcomes_.end();
}

std::size_t DiscretePovm::index_of(double label) const {
  const auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
  if (it == outcomes_.end()) {
    throw std::out_of_range("DiscretePovm: unknown outcome label " + std::to_string(label));
  }
  return static_cast<std::size_t>(it - outcomes_.begin());
}

Effect effect_of(const DichotomicPovm& povm, Sign sign) {
  const double s = to_value(sign);
  return Effect(1.0 + s * povm.gamma(), s * povm.c());
}

DiscretePovm to_discrete(const DichotomicPovm& povm) {
  return DiscretePovm({1.0, -1.0}, {effect_of(povm, Sign::plus), effect_of(povm, Sign::minus)});
}

DichotomicPovm to_dichotomic(const DiscretePovm& povm) {
  if (povm.size() != 2 || !povm.has_outcome(1.0) || !povm.has_outcome(-1.0)) {
    throw std::invalid_argument("to_dichotomic: outcome set must be {+1, -1}");
  }
  const Effect& plus = povm.effect_for(1.0);
  return DichotomicPovm(plus.alpha() - 1.0, plus.vec());
}

DichotomicPovm sharp_observable(const BlochVector& a) {
  if (std::abs(a.norm() - 1.0) > kPositivityTol) {
    throw std::invalid_argument("sharp_observable: direction must be a unit vector");
  }
  return DichotomicPovm::symmetric(a);
}

double probability(const DiscretePovm& povm, double outcome, const DensityOperator& state) {
  return povm.effect_for(outcome).op().expectation(state);
}

double probability(const DichotomicPovm& povm, Sign outcome, const DensityOperator& state) {
  return effect_of(povm, outcome).op().expectation(state);
}

QubitOperator moment(const DiscretePovm& povm, int k) {
  if (k < 1) throw std::invalid_argument("moment: order must be positive");
  QubitOperator m = QubitOperator::zero();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    m += std::pow(povm.outcome(i), k) * povm.effect(i).op();
  }
  return m;
}

QubitOperator moment(const DichotomicPovm& povm, int k) { return moment(to_discrete(povm), k); }

}  // namespace qmu
