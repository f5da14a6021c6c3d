#include "qmu/compat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qmu {

namespace {

void require_direction(const BlochVector& v, const char* what) {
  if (v.norm() > 1.0 + kPositivityTol) {
    throw std::invalid_argument(std::string(what) + ": direction longer than 1");
  }
}

std::size_t position(const std::vector<double>& labels, double v) {
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), v) - labels.begin());
}

std::vector<double> image(const DiscretePovm& e, const OutcomeMap& f) {
  std::vector<double> out;
  for (double m : e.outcomes()) {
    const double v = f(m) + 0.0;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

IncompatibleError::IncompatibleError(double violation)
    : std::domain_error("pair is not jointly measurable (|c+d|+|c-d|-2 = " +
                        std::to_string(violation) + ")"),
      violation_(violation) {}

double compatibility_violation(const BlochVector& c, const BlochVector& d) {
  return (c + d).norm() + (c - d).norm() - 2.0;
}

bool compatible(const BlochVector& c, const BlochVector& d) {
  require_direction(c, "compatible");
  require_direction(d, "compatible");
  return compatibility_violation(c, d) <= kPositivityTol;
}

double compat_boundary_residual(const BlochVector& c, const BlochVector& d) {
  const double m = c.dot(d);
  return c.norm_squared() + d.norm_squared() - 1.0 - m * m;
}

DichotomicPovm JointObservable::first_marginal() const {
  const QubitOperator plus = effect(Sign::plus, Sign::plus).op() + effect(Sign::plus, Sign::minus).op();
  return DichotomicPovm(plus.alpha - 1.0, plus.vec);
}

DichotomicPovm JointObservable::second_marginal() const {
  const QubitOperator plus = effect(Sign::plus, Sign::plus).op() + effect(Sign::minus, Sign::plus).op();
  return DichotomicPovm(plus.alpha - 1.0, plus.vec);
}

JointObservable joint_observable(const BlochVector& c, const BlochVector& d) {
  if (!compatible(c, d)) throw IncompatibleError(compatibility_violation(c, d));
  const double m = c.dot(d);
  auto cell = [&](Sign k, Sign l) {
    const double kv = to_value(k);
    const double lv = to_value(l);
    return Effect(0.5 * (1.0 + kv * lv * m), 0.5 * (kv * c + lv * d));
  };
  return JointObservable(c, d, m,
                         {cell(Sign::plus, Sign::plus), cell(Sign::plus, Sign::minus),
                          cell(Sign::minus, Sign::plus), cell(Sign::minus, Sign::minus)});
}

OutcomeMap OutcomeMap::from_values(const DiscretePovm& povm, std::span<const double> values) {
  if (values.size() != povm.size()) {
    throw std::invalid_argument("OutcomeMap: value count does not match outcome count");
  }
  OutcomeMap f;
  for (std::size_t i = 0; i < values.size(); ++i) f.set(povm.outcome(i), values[i]);
  return f;
}

OutcomeMap OutcomeMap::identity(const DiscretePovm& povm) {
  OutcomeMap f;
  for (double m : povm.outcomes()) f.set(m, m);
  return f;
}

OutcomeMap OutcomeMap::constant(const DiscretePovm& povm, double value) {
  OutcomeMap f;
  for (double m : povm.outcomes()) f.set(m, value);
  return f;
}

bool OutcomeMap::is_total_on(const DiscretePovm& povm) const {
  return std::all_of(povm.outcomes().begin(), povm.outcomes().end(),
                     [&](double m) { return table_.contains(m); });
}

double OutcomeMap::operator()(double label) const {
  const auto it = table_.find(label + 0.0);
  if (it == table_.end()) {
    throw std::out_of_range("OutcomeMap: no value for outcome " + std::to_string(label));
  }
  return it->second;
}

OutcomeMap OutcomeMap::after(const OutcomeMap& inner) const {
  OutcomeMap out;
  for (const auto& [m, v] : inner.table_) out.set(m, (*this)(v));
  return out;
}

DiscretePovm post_process(const DiscretePovm& e, const OutcomeMap& f) {
  const std::vector<double> labels = image(e, f);
  std::vector<QubitOperator> sums(labels.size(), QubitOperator::zero());
  for (std::size_t i = 0; i < e.size(); ++i) {
    sums[position(labels, f(e.outcome(i)) + 0.0)] += e.effect(i).op();
  }
  std::vector<Effect> effects;
  effects.reserve(sums.size());
  for (const auto& s : sums) effects.emplace_back(s);
  return DiscretePovm(labels, std::move(effects));
}

JointPovm joint_from_functions(const DiscretePovm& e, const OutcomeMap& f, const OutcomeMap& g) {
  JointPovm j;
  j.first_outcomes = image(e, f);
  j.second_outcomes = image(e, g);
  std::vector<std::vector<QubitOperator>> sums(
      j.first_outcomes.size(), std::vector<QubitOperator>(j.second_outcomes.size(), QubitOperator::zero()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double m = e.outcome(i);
    sums[position(j.first_outcomes, f(m) + 0.0)][position(j.second_outcomes, g(m) + 0.0)] += e.effect(i).op();
  }
  for (const auto& row : sums) {
    auto& out = j.effects.emplace_back();
    for (const auto& s : row) out.emplace_back(s);
  }
  return j;
}

DiscretePovm JointPovm::first_marginal() const {
  std::vector<Effect> out;
  for (const auto& row : effects) {
    QubitOperator s = QubitOperator::zero();
    for (const auto& e : row) s += e.op();
    out.emplace_back(s);
  }
  return DiscretePovm(first_outcomes, std::move(out));
}

DiscretePovm JointPovm::second_marginal() const {
  std::vector<Effect> out;
  for (std::size_t k = 0; k < second_outcomes.size(); ++k) {
    QubitOperator s = QubitOperator::zero();
    for (const auto& row : effects) s += row[k].op();
    out.emplace_back(s);
  }
  return DiscretePovm(second_outcomes, std::move(out));
}

double unsharpness(const BlochVector& c) {
  require_direction(c, "unsharpness");
  return std::sqrt(std::max(0.0, 1.0 - c.norm_squared()));
}

double commutator_norm(const BlochVector& c, const BlochVector& d) {
  return commutator_norm(QubitOperator{1.0, c}, QubitOperator{1.0, d});
}

}  // namespace qmu
