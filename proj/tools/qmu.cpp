// Command-line front end: compatibility checks, error values, boundary
// curves, region sampling, alternating minimization and figure data.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "figures.hpp"
#include "json.hpp"
#include "qmu/bounds.hpp"
#include "qmu/compat.hpp"
#include "qmu/counterexamples.hpp"
#include "qmu/errors.hpp"
#include "qmu/io.hpp"
#include "qmu/optimize.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string out = "-";
  std::uint64_t seed = 1;
  std::string format = "csv";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qmu::ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline JSON if it looks like an object, otherwise a file path
qmu::AnyPovm load_povm(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return qmu::parse_povm(arg);
  return qmu::parse_povm(slurp(arg));
}

qmu::BlochVector parse_vector(const std::string& text) {
  std::istringstream in(text);
  double v[3];
  char sep = 0;
  if (!(in >> v[0] >> sep) || sep != ',' || !(in >> v[1] >> sep) || sep != ',' || !(in >> v[2])) {
    throw UsageError("expected a vector 'x,y,z', got '" + text + "'");
  }
  in >> std::ws;
  if (!in.eof()) throw UsageError("trailing characters in vector '" + text + "'");
  return {v[0], v[1], v[2]};
}

void emit(const Globals& g, const std::string& text) {
  if (g.out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + g.out + "'");
  f << text;
}

Json vector_json(const qmu::BlochVector& v) { return Json::array({v.x(), v.y(), v.z()}); }

std::string render_table(const Globals& g, const qmu::cli::Table& t, const std::vector<qmu::Assertion>& checks = {}) {
  if (g.format == "json") {
    Json j{{"columns", t.columns}, {"rows", Json::array()}};
    for (const auto& r : t.rows) j["rows"].push_back(r);
    if (!checks.empty()) {
      j["checks"] = Json::array();
      for (const auto& a : checks) {
        j["checks"].push_back(Json{{"label", a.label}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
      }
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  std::vector<std::string_view> header(t.columns.begin(), t.columns.end());
  qmu::CsvWriter w(out, header);
  for (const auto& r : t.rows) w.row(r);
  return out.str();
}

void report_checks(const std::vector<qmu::Assertion>& checks) {
  for (const auto& a : checks) {
    std::cerr << (a.pass ? "PASS " : "FAIL ") << a.label << " (actual " << qmu::format_real(a.actual)
              << ", expected " << qmu::format_real(a.expected) << ")\n";
  }
}

int run_compat(const Globals& g, const std::string& c_arg, const std::string& d_arg) {
  const qmu::DichotomicPovm c = qmu::as_dichotomic(load_povm(c_arg));
  const qmu::DichotomicPovm d = qmu::as_dichotomic(load_povm(d_arg));
  if (!c.is_symmetric() || !d.is_symmetric()) {
    throw UsageError("compat: the criterion applies to unbiased (gamma = 0) observables only");
  }
  const bool ok = qmu::compatible(c.c(), d.c());
  Json j{{"compatible", ok},
         {"violation", qmu::compatibility_violation(c.c(), d.c())},
         {"boundary_residual", qmu::compat_boundary_residual(c.c(), d.c())},
         {"joint", nullptr}};
  if (ok) {
    const qmu::JointObservable joint = qmu::joint_observable(c.c(), d.c());
    Json effects = Json::array();
    for (qmu::Sign k : {qmu::Sign::plus, qmu::Sign::minus}) {
      for (qmu::Sign l : {qmu::Sign::plus, qmu::Sign::minus}) {
        const qmu::Effect& e = joint.effect(k, l);
        effects.push_back(Json{{"k", static_cast<int>(k)},
                               {"l", static_cast<int>(l)},
                               {"alpha", e.alpha()},
                               {"vec", vector_json(e.vec())}});
      }
    }
    j["joint"] = Json{{"mixing", joint.mixing()}, {"effects", effects}};
  }
  emit(g, j.dump(2) + "\n");
  return ok ? kOk : kNegative;
}

int run_error(const Globals& g, const std::string& measure, const std::string& target_arg,
              const std::string& approx_arg, const std::string& state_arg) {
  const qmu::AnyPovm target = load_povm(target_arg);
  const qmu::AnyPovm approx = load_povm(approx_arg);
  const qmu::DensityOperator rho(parse_vector(state_arg));
  double value = 0.0;
  if (measure == "metric") {
    const auto* ta = std::get_if<qmu::DichotomicPovm>(&target);
    const auto* ca = std::get_if<qmu::DichotomicPovm>(&approx);
    value = ta && ca ? qmu::metric_error_dichotomic(*ta, *ca)
                     : qmu::metric_error_general(qmu::as_discrete(target), qmu::as_discrete(approx));
  } else if (measure == "noise") {
    value = qmu::noise_general(qmu::as_discrete(target), qmu::as_discrete(approx), rho);
  } else {
    const qmu::DichotomicPovm t = qmu::as_dichotomic(target);
    if (!t.is_sharp()) throw UsageError("error: local uniform error needs a sharp target");
    value = qmu::local_uniform_error(t.c(), qmu::as_dichotomic(approx), rho);
  }
  if (g.format == "csv") {
    emit(g, "measure,value\n" + measure + "," + qmu::format_real(value) + "\n");
  } else {
    emit(g, Json{{"measure", measure}, {"value", value}}.dump(2) + "\n");
  }
  return kOk;
}

int run_bound(const Globals& g, const std::string& measure, double theta, int grid) {
  std::ostringstream out;
  if (measure == "metric") {
    const auto rows = qmu::yu_oh_curve(theta, grid);
    if (g.format == "json") {
      qmu::cli::Table t{{"theta", "phi", "M2", "d_a", "d_b", "u_c", "u_d"}, {}};
      for (const auto& p : rows) t.rows.push_back({p.theta, p.phi, p.m_squared, p.d_a, p.d_b, p.u_c, p.u_d});
      emit(g, render_table(g, t));
      return kOk;
    }
    qmu::write_yu_oh_csv(out, rows);
  } else {
    const auto rows = qmu::branciard_curve(theta, grid);
    if (g.format == "json") {
      qmu::cli::Table t{{"theta", "phi", "eps_a", "eps_b", "lhs", "rhs"}, {}};
      for (const auto& r : rows) t.rows.push_back({r.theta, r.phi, r.eps_a, r.eps_b, r.lhs, r.rhs});
      emit(g, render_table(g, t));
      return kOk;
    }
    qmu::write_branciard_csv(out, rows);
  }
  emit(g, out.str());
  return kOk;
}

int run_region(const Globals& g, const std::string& measure, double theta, int samples) {
  qmu::OptimizerConfig cfg;
  cfg.seed = g.seed;
  const auto points = qmu::sample_admissible_region(qmu::parse_measure(measure), theta, samples, cfg);
  double min_margin = INFINITY;
  int below = 0;
  for (const auto& p : points) {
    const double m = qmu::boundary_margin(p, theta);
    min_margin = std::min(min_margin, m);
    if (m < -1e-3) ++below;
  }
  if (g.format == "json") {
    qmu::cli::Table t{{"e_a", "e_b"}, {}};
    for (const auto& p : points) t.rows.push_back({p.e_a, p.e_b});
    emit(g, render_table(g, t));
  } else {
    std::ostringstream out;
    qmu::write_region_csv(out, g.seed, theta, points);
    emit(g, out.str());
  }
  std::cerr << "region: measure=" << measure << " theta=" << qmu::format_real(theta) << " samples=" << samples
            << " seed=" << g.seed << " min_margin=" << qmu::format_real(min_margin) << " below_1e-3=" << below
            << "\n";
  return kOk;
}

int run_optimize(const Globals& g, const std::string& measure, double theta, const std::string& c0_arg,
                 int max_iter, double tol) {
  qmu::OptimizerConfig cfg;
  cfg.max_iter = max_iter;
  cfg.conv_tol = tol;
  cfg.seed = g.seed;
  const auto [a, b] = qmu::standard_targets(theta);
  const qmu::Measure m = qmu::parse_measure(measure);
  qmu::IterationTrace trace;
  bool converged = true;
  try {
    trace = qmu::alternate_minimize(m, a, b, parse_vector(c0_arg), cfg);
  } catch (const qmu::NotConvergedError& e) {
    trace = e.trace();
    converged = false;
  }
  qmu::cli::Table t{{"iter", "c_x", "c_y", "c_z", "d_x", "d_y", "d_z", "e_a", "e_b"}, {}};
  for (std::size_t k = 0; k < trace.pairs.size(); ++k) {
    const auto& [c, d] = trace.pairs[k];
    const double ea = m == qmu::Measure::metric_d ? (a - c).norm() : qmu::noise_symmetric(a, c);
    const double eb = m == qmu::Measure::metric_d ? (b - d).norm() : qmu::noise_symmetric(b, d);
    t.rows.push_back({double(k), c.x(), c.y(), c.z(), d.x(), d.y(), d.z(), ea, eb});
  }
  emit(g, render_table(g, t));
  std::cerr << "optimize: " << (converged ? "converged" : "not converged") << " after "
            << trace.pairs.size() - 1 << " iterations\n";
  return converged ? kOk : kNegative;
}

int run_reproduce(const Globals& g, int figure_id, const std::string& example) {
  if (!example.empty()) {
    const qmu::CounterexampleReport rep = qmu::run_example(example);
    emit(g, qmu::to_json(rep) + "\n");
    report_checks(rep.assertions);
    return rep.all_passed() ? kOk : kNegative;
  }
  const qmu::cli::FigureData fig = qmu::cli::figure(figure_id);
  emit(g, render_table(g, fig.table, fig.checks));
  report_checks(fig.checks);
  return fig.all_passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit measurement error toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "Output path, '-' for stdout");
  app.add_option("--seed", g.seed, "Seed for sampling");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string c_arg, d_arg;
  auto* compat = app.add_subcommand("compat", "Joint measurability of two unbiased dichotomic POVMs");
  compat->add_option("c", c_arg, "First POVM (inline JSON or file)")->required();
  compat->add_option("d", d_arg, "Second POVM (inline JSON or file)")->required();

  std::string measure = "metric";
  std::string target_arg, approx_arg, state_arg = "0,0,0";
  auto* error = app.add_subcommand("error", "Error of an approximating POVM");
  error->add_option("--measure", measure)->check(CLI::IsMember({"metric", "noise", "ebar"}));
  error->add_option("--target", target_arg, "Target POVM (inline JSON or file)")->required();
  error->add_option("--approx", approx_arg, "Approximating POVM (inline JSON or file)")->required();
  error->add_option("--state", state_arg, "Bloch vector of the state, x,y,z");

  double theta = qmu::kHalfPi / 2.0;
  int grid = 101;
  auto* bound = app.add_subcommand("bound", "Optimal tradeoff curve");
  bound->add_option("--measure", measure)->check(CLI::IsMember({"metric", "noise"}));
  bound->add_option("--theta", theta, "Angle between the targets, [0, pi/2]")->required();
  bound->add_option("--grid", grid, "Number of curve points")->check(CLI::Range(2, 10000000));

  int samples = 10000;
  auto* region = app.add_subcommand("region", "Monte Carlo sample of achievable error pairs");
  region->add_option("--measure", measure)->check(CLI::IsMember({"metric", "noise"}));
  region->add_option("--theta", theta)->required();
  region->add_option("--samples", samples)->check(CLI::Range(1, 100000000));

  std::string c0_arg = "0.5,0.3,0";
  int max_iter = 100000;
  double tol = 1e-12;
  auto* optimize = app.add_subcommand("optimize", "Alternating minimization trace");
  optimize->add_option("--measure", measure)->check(CLI::IsMember({"metric", "noise"}));
  optimize->add_option("--theta", theta)->required();
  optimize->add_option("--c0", c0_arg, "Starting vector x,y,z");
  optimize->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  optimize->add_option("--tol", tol)->check(CLI::PositiveNumber);

  int figure_id = 0;
  std::string example;
  auto* reproduce = app.add_subcommand("reproduce", "Figure data or a worked example report");
  auto* fig_opt = reproduce->add_option("--figure", figure_id)->check(CLI::IsMember({1, 2, 4, 5, 6}));
  auto* ex_opt = reproduce->add_option("--example", example)->check(CLI::IsMember(qmu::example_ids()));
  fig_opt->excludes(ex_opt);
  reproduce->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*compat) return run_compat(g, c_arg, d_arg);
    if (*error) return run_error(g, measure, target_arg, approx_arg, state_arg);
    if (*bound) return run_bound(g, measure, theta, grid);
    if (*region) return run_region(g, measure, theta, samples);
    if (*optimize) return run_optimize(g, measure, theta, c0_arg, max_iter, tol);
    if (*reproduce) return run_reproduce(g, figure_id, example);
  } catch (const std::exception& e) {
    std::cerr << "qmu: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
