#include "qmu/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmu {

namespace {

constexpr double kTol = 1e-12;
constexpr double kPerturbation = 1e-6;

BlochVector rotated_towards(const BlochVector& a, const BlochVector& p, double angle) {
  return std::cos(angle) * a + std::sin(angle) * p;
}

QubitOperator projector(const BlochVector& n, double sign) { return {1.0, sign * n}; }

std::string fmt_label(const std::string& base, double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return base + "=" + s;
}

}  // namespace

Assertion make_assertion(std::string label, double expected, double actual, double tol,
                         Relation relation, std::string provenance) {
  Assertion a{std::move(label), expected, actual, tol, relation, false, std::move(provenance)};
  switch (relation) {
    case Relation::equal:
      a.pass = std::abs(actual - expected) <= tol;
      break;
    case Relation::greater:
      a.pass = actual > expected + tol;
      break;
    case Relation::greater_equal:
      a.pass = actual >= expected - tol;
      break;
    case Relation::less_equal:
      a.pass = actual <= expected + tol;
      break;
  }
  return a;
}

bool CounterexampleReport::all_passed() const {
  return !assertions.empty() &&
         std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

double noise_squared_against(const QubitOperator& target, const DiscretePovm& approx,
                             const DensityOperator& state) {
  const QubitOperator c1 = moment(approx, 1);
  const QubitOperator c2 = moment(approx, 2);
  return (c2 - 2.0 * jordan_product(c1, target) + square(target)).expectation(state);
}

OutcomeMap hall_optimal_f(const DiscretePovm& e, const QubitOperator& target, const DensityOperator& state) {
  OutcomeMap f;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double p = e.effect(i).op().expectation(state);
    if (p <= kProbabilityTol) {
      throw std::domain_error("hall_optimal_f: outcome " + std::to_string(e.outcome(i)) +
                              " has probability " + std::to_string(p));
    }
    f.set(e.outcome(i), jordan_product(e.effect(i).op(), target).expectation(state) / p);
  }
  return f;
}

CounterexampleReport run_three_outcome_example() {
  const double gamma = 2.0 - std::numbers::sqrt2;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  CounterexampleReport rep;
  rep.name = "three-outcome";

  const QubitOperator e1{gamma, {gamma, 0.0, 0.0}};
  const QubitOperator e2{gamma, {0.0, gamma, 0.0}};
  const QubitOperator e3 = QubitOperator::identity() - e1 - e2;
  const DiscretePovm e({1.0, 2.0, 3.0}, {Effect(e1), Effect(e2), Effect(e3)});

  // target: eigenvalues +-gamma/sqrt2 along n = (1, -1, 0)/sqrt2
  const BlochVector n = BlochVector(1.0, -1.0, 0.0) / std::numbers::sqrt2;
  const QubitOperator a_op{0.0, {gamma, -gamma, 0.0}};
  const double eig = gamma * inv_sqrt2;
  const DiscretePovm target({eig, -eig}, {Effect(projector(n, 1.0)), Effect(projector(n, -1.0))});
  const DensityOperator rho(BlochVector(-inv_sqrt2, -inv_sqrt2, 0.0));

  rep.inputs = {{"E(1)", e1}, {"E(2)", e2}, {"E(3)", e3}, {"A", a_op}, {"rho", rho.op()}};
  rep.quantities.emplace_back("gamma", gamma);

  // (i) rank-one positive effects summing to the identity
  double worst_rank = 0.0;
  double worst_min_eig = 0.0;
  QubitOperator sum = QubitOperator::zero();
  for (const Effect& eff : e.effects()) {
    worst_rank = std::max(worst_rank, std::abs(eff.op().min_eigenvalue()));
    worst_min_eig = std::min(worst_min_eig, eff.op().min_eigenvalue());
    sum += eff.op();
  }
  rep.assertions.push_back(make_assertion("(i) effects are rank one", 0.0, worst_rank, kTol,
                                          Relation::equal, "rank-one positive effects"));
  rep.assertions.push_back(make_assertion("(i) effects are positive", 0.0, worst_min_eig, kTol,
                                          Relation::greater_equal, "rank-one positive effects"));
  rep.assertions.push_back(make_assertion("(i) effects sum to I", 0.0,
                                          operator_norm(sum - QubitOperator::identity()), kTol,
                                          Relation::equal, "effects form a POVM"));

  const OutcomeMap f = hall_optimal_f(e, a_op, rho);
  rep.quantities.emplace_back("f(1)", f(1.0));
  rep.quantities.emplace_back("f(2)", f(2.0));
  rep.quantities.emplace_back("f(3)", f(3.0));
  rep.assertions.push_back(make_assertion("optimal f(1)", 1.0, f(1.0), kTol, Relation::equal,
                                          "optimal relabeling of the three outcomes"));
  rep.assertions.push_back(make_assertion("optimal f(2)", -1.0, f(2.0), kTol, Relation::equal,
                                          "optimal relabeling of the three outcomes"));
  rep.assertions.push_back(make_assertion("optimal f(3)", 0.0, f(3.0), kTol, Relation::equal,
                                          "optimal relabeling of the three outcomes"));

  // snap the computed labels so post-processing merges nothing by accident
  const DiscretePovm c = post_process(e, OutcomeMap{{1.0, 1.0}, {2.0, -1.0}, {3.0, 0.0}});

  // (ii) first moment reproduces the target operator
  const QubitOperator c1 = moment(c, 1);
  const double moment_gap = std::max({std::abs(c1.alpha - a_op.alpha), std::abs(c1.vec.x() - a_op.vec.x()),
                                      std::abs(c1.vec.y() - a_op.vec.y()), std::abs(c1.vec.z() - a_op.vec.z())});
  rep.assertions.push_back(make_assertion("(ii) C[1] = A componentwise", 0.0, moment_gap, kTol,
                                          Relation::equal, "first moment equals the target"));

  // (iii) zero noise
  const double eps2 = noise_squared(target, c, rho);
  rep.quantities.emplace_back("eps^2", eps2);
  rep.quantities.emplace_back("eps^2 (operator form)", noise_squared_against(a_op, c, rho));
  rep.assertions.push_back(make_assertion("(iii) eps^2 = 0", 0.0, eps2, kTol, Relation::equal,
                                          "noise vanishes in the chosen state"));

  // (iv) the statistics differ anyway
  const double pa_plus = probability(target, eig, rho);
  const double pa_minus = probability(target, -eig, rho);
  const double pc_plus = probability(c, 1.0, rho);
  const double pc_minus = probability(c, -1.0, rho);
  const double pc_zero = probability(c, 0.0, rho);
  rep.quantities.emplace_back("p_A(+)", pa_plus);
  rep.quantities.emplace_back("p_A(-)", pa_minus);
  rep.quantities.emplace_back("p_C(+)", pc_plus);
  rep.quantities.emplace_back("p_C(-)", pc_minus);
  rep.quantities.emplace_back("p_C(0)", pc_zero);
  const char* stats = "target and approximator statistics differ";
  rep.assertions.push_back(make_assertion("(iv) p_A(+) = 1/2", 0.5, pa_plus, kTol, Relation::equal, stats));
  rep.assertions.push_back(make_assertion("(iv) p_A(-) = 1/2", 0.5, pa_minus, kTol, Relation::equal, stats));
  rep.assertions.push_back(
      make_assertion("(iv) p_C(+) = gamma^2/4", gamma * gamma / 4.0, pc_plus, kTol, Relation::equal, stats));
  rep.assertions.push_back(
      make_assertion("(iv) p_C(-) = gamma^2/4", gamma * gamma / 4.0, pc_minus, kTol, Relation::equal, stats));
  rep.assertions.push_back(
      make_assertion("(iv) p_C(0) = 2(1-gamma)", 2.0 * (1.0 - gamma), pc_zero, kTol, Relation::equal, stats));

  // (v) the metric error sees the difference; A gets a null effect at 0
  const DiscretePovm a_embedded({1.0, -1.0, 0.0}, {Effect(projector(n, 1.0)), Effect(projector(n, -1.0)),
                                                    Effect(QubitOperator::zero())});
  const double metric = metric_error_general(a_embedded, c);
  rep.quantities.emplace_back("D(C, A)", metric);
  rep.assertions.push_back(make_assertion("(v) D(C, A) > 0", 0.0, metric, kTol, Relation::greater,
                                          "metric error detects the mismatch"));
  return rep;
}

CounterexampleReport run_biased_zero_noise() {
  CounterexampleReport rep;
  rep.name = "biased";
  const BlochVector a = BlochVector::unit_x();
  const BlochVector p = BlochVector::unit_y();
  const DichotomicPovm target = sharp_observable(a);
  const DensityOperator on_axis(a);
  rep.inputs.emplace_back("A(+)", effect_of(target, Sign::plus).op());
  rep.inputs.emplace_back("rho", on_axis.op());

  for (double gamma : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    const DichotomicPovm c(gamma, (1.0 - gamma) * a);
    const std::string tag = fmt_label("gamma", gamma);
    rep.inputs.emplace_back("C(+) " + tag, effect_of(c, Sign::plus).op());

    const double eps = noise_biased(a, c, on_axis);
    rep.quantities.emplace_back("eps " + tag, eps);
    rep.assertions.push_back(make_assertion("eps = 0 at r = a, " + tag, 0.0, eps, kTol, Relation::equal,
                                            "zero noise for r = a and c = |c| a"));

    const QubitOperator lower_gap =
        effect_of(c, Sign::minus).op() - c.c().norm() * effect_of(target, Sign::minus).op();
    rep.assertions.push_back(make_assertion("C- = |c| A-, " + tag, 0.0, operator_norm(lower_gap), kTol,
                                            Relation::equal, "minus effect is a multiple of the target's"));

    const DensityOperator tilted(rotated_towards(a, p, kPerturbation));
    const double eps_r = noise_biased(a, c, tilted);
    rep.quantities.emplace_back("eps tilted r " + tag, eps_r);
    rep.assertions.push_back(make_assertion("eps > 0 for tilted r, " + tag, 0.0, eps_r, 0.0,
                                            Relation::greater, "zero noise only at r = a"));

    if (c.c().norm() > 0.0) {
      const DichotomicPovm c_tilted(gamma, c.c().norm() * rotated_towards(a, p, kPerturbation));
      const double eps_c = noise_biased(a, c_tilted, on_axis);
      rep.quantities.emplace_back("eps tilted c " + tag, eps_c);
      rep.assertions.push_back(make_assertion("eps > 0 for tilted c, " + tag, 0.0, eps_c, 0.0,
                                              Relation::greater, "zero noise only for c along a"));
    }
  }

  const DichotomicPovm half(0.5, 0.5 * a);
  const double eps2_opposite = noise_biased_squared(a, half, DensityOperator(-1.0 * a));
  rep.quantities.emplace_back("eps^2 gamma=0.5 r=-a", eps2_opposite);
  rep.assertions.push_back(make_assertion("eps^2 = 2 at r = -a, gamma=0.5", 2.0, eps2_opposite, kTol,
                                          Relation::equal, "biased noise formula"));
  return rep;
}

CounterexampleReport run_n_outcome_commuting() {
  CounterexampleReport rep;
  rep.name = "n-outcome";
  const BlochVector a = BlochVector::unit_z();
  const DiscretePovm target = to_discrete(sharp_observable(a));
  const QubitOperator a_minus = effect_of(sharp_observable(a), Sign::minus).op();
  const DensityOperator psi_plus(a);
  const DensityOperator psi_minus(-1.0 * a);
  const std::vector<DensityOperator> off_axis = {
      psi_minus, DensityOperator::maximally_mixed(), DensityOperator(BlochVector(std::sin(0.3), 0.0, std::cos(0.3))),
      DensityOperator(BlochVector(0.6, -0.48, 0.64))};
  rep.inputs.emplace_back("A(-)", a_minus);

  struct Case {
    std::vector<double> weights;  // c_k, summing to c
    std::vector<double> labels;
    std::vector<double> relabels;
  };
  const std::vector<Case> cases = {
      {{}, {}, {}},
      {{0.25}, {-1.0}, {4.0}},
      {{0.25, 0.25}, {7.0, -3.0}, {-20.0, 0.5}},
      {{0.5, 0.3, 0.1}, {-1.0, 2.0, 0.0}, {9.0, -9.0, 3.5}},
  };

  auto build = [&](const std::vector<double>& weights, const std::vector<double>& labels) {
    double c = 0.0;
    for (double w : weights) c += w;
    std::vector<double> outcomes{1.0};
    std::vector<Effect> effects{Effect(QubitOperator::identity() - c * a_minus)};
    for (std::size_t k = 0; k < weights.size(); ++k) {
      outcomes.push_back(labels[k]);
      effects.emplace_back(weights[k] * a_minus);
    }
    return DiscretePovm(std::move(outcomes), std::move(effects));
  };

  for (const Case& cs : cases) {
    double c = 0.0;
    for (double w : cs.weights) c += w;
    const std::string tag = fmt_label("c", c);
    const DiscretePovm povm = build(cs.weights, cs.labels);
    rep.inputs.emplace_back("C(1) " + tag, povm.effect(0).op());

    const double on_eigen = noise_squared_against(moment(target, 1), povm, psi_plus);
    rep.quantities.emplace_back("eps^2 psi+ " + tag, on_eigen);
    rep.assertions.push_back(make_assertion("eps = 0 on eigenstate, " + tag, 0.0, on_eigen, kTol,
                                            Relation::equal, "commuting approximator with C(1) = I - c A-"));

    for (std::size_t s = 0; s < off_axis.size(); ++s) {
      const double eps2 = noise_squared_against(moment(target, 1), povm, off_axis[s]);
      rep.quantities.emplace_back("eps^2 state " + std::to_string(s) + " " + tag, eps2);
      rep.assertions.push_back(make_assertion("eps > 0 off eigenstate " + std::to_string(s) + ", " + tag, 0.0,
                                              eps2, kTol, Relation::greater,
                                              "zero noise only on the eigenstate"));
    }

    if (!cs.weights.empty()) {
      const DiscretePovm relabeled = build(cs.weights, cs.relabels);
      const double again = noise_squared_against(moment(target, 1), relabeled, psi_plus);
      rep.assertions.push_back(make_assertion("label invariance on eigenstate, " + tag, on_eigen, again, kTol,
                                              Relation::equal, "labels of the remaining outcomes are arbitrary"));
    }
  }
  return rep;
}

CounterexampleReport run_ebar_discontinuity() {
  CounterexampleReport rep;
  rep.name = "ebar";
  const BlochVector a = BlochVector::unit_x();
  const BlochVector p = BlochVector::unit_z();
  const DichotomicPovm trivial(1.0, BlochVector{});
  const DensityOperator eigen(a);
  const DensityOperator tilted(rotated_towards(a, p, kPerturbation));
  rep.inputs = {{"C(+)", effect_of(trivial, Sign::plus).op()}, {"rho eigen", eigen.op()}, {"rho tilted", tilted.op()}};

  const double at_eigen = local_uniform_error_squared(a, trivial, eigen);
  const double near_eigen = local_uniform_error_squared(a, trivial, tilted);
  rep.quantities.emplace_back("ebar^2 eigenstate", at_eigen);
  rep.quantities.emplace_back("ebar^2 tilted", near_eigen);
  rep.assertions.push_back(make_assertion("ebar^2 = 0 at r = a", 0.0, at_eigen, kTol, Relation::equal,
                                          "trivial approximator on the eigenstate"));
  rep.assertions.push_back(make_assertion("ebar^2 = 4 at tilted r", 4.0, near_eigen, kTol, Relation::equal,
                                          "jump of the local uniform error"));

  const DichotomicPovm exact = DichotomicPovm::symmetric(a);
  double worst = 0.0;
  for (const DensityOperator& rho : {eigen, tilted, DensityOperator::maximally_mixed(),
                                     DensityOperator(BlochVector(0.0, 0.6, -0.8))}) {
    worst = std::max(worst, local_uniform_error_squared(a, exact, rho));
  }
  rep.quantities.emplace_back("max ebar^2 for C = A", worst);
  rep.assertions.push_back(make_assertion("ebar^2 = 0 everywhere for C = A", 0.0, worst, kTol, Relation::equal,
                                          "exact approximator"));
  return rep;
}

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {"three-outcome", "biased", "n-outcome", "ebar"};
  return ids;
}

CounterexampleReport run_example(const std::string& id) {
  if (id == "three-outcome") return run_three_outcome_example();
  if (id == "biased") return run_biased_zero_noise();
  if (id == "n-outcome") return run_n_outcome_commuting();
  if (id == "ebar") return run_ebar_discontinuity();
  throw std::invalid_argument("unknown example '" + id + "'");
}

}  // namespace qmu
