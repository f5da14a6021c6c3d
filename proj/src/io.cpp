#include "qmu/io.hpp"

#include <fmt/format.h>

#include <cmath>

#include "json.hpp"

namespace qmu {

namespace {

using Json = nlohmann::ordered_json;

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for '") + what + "'");
  return j.get<double>();
}

BlochVector vector3(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(std::string("'") + what + "' must be an array of three numbers");
  }
  return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

Json vector_json(const BlochVector& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json operator_json(const QubitOperator& op) { return Json{{"alpha", op.alpha}, {"vec", vector_json(op.vec)}}; }

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::equal:
      return "eq";
    case Relation::greater:
      return "gt";
    case Relation::greater_equal:
      return "ge";
    case Relation::less_equal:
      return "le";
  }
  return "eq";
}

// JSON cannot hold non-finite numbers; report them as strings
Json real_json(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

}  // namespace

AnyPovm parse_povm(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("POVM JSON must be an object");
  try {
    if (j.contains("gamma") || j.contains("c")) {
      if (!j.contains("gamma") || !j.contains("c")) throw ParseError("dichotomic form needs both 'gamma' and 'c'");
      return DichotomicPovm(number(j["gamma"], "gamma"), vector3(j["c"], "c"));
    }
    if (!j.contains("outcomes") || !j.contains("effects")) {
      throw ParseError("POVM JSON needs 'outcomes' and 'effects' or 'gamma' and 'c'");
    }
    const Json& outs = j["outcomes"];
    const Json& effs = j["effects"];
    if (!outs.is_array() || !effs.is_array()) throw ParseError("'outcomes' and 'effects' must be arrays");
    std::vector<double> outcomes;
    std::vector<Effect> effects;
    for (const Json& o : outs) outcomes.push_back(number(o, "outcomes"));
    for (const Json& e : effs) {
      if (!e.is_object() || !e.contains("alpha") || !e.contains("vec")) {
        throw ParseError("each effect needs 'alpha' and 'vec'");
      }
      effects.emplace_back(number(e["alpha"], "alpha"), vector3(e["vec"], "vec"));
    }
    return DiscretePovm(std::move(outcomes), std::move(effects));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid POVM: ") + e.what());
  }
}

DichotomicPovm as_dichotomic(const AnyPovm& povm) {
  if (const auto* d = std::get_if<DichotomicPovm>(&povm)) return *d;
  try {
    return to_dichotomic(std::get<DiscretePovm>(povm));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

DiscretePovm as_discrete(const AnyPovm& povm) {
  if (const auto* d = std::get_if<DiscretePovm>(&povm)) return *d;
  return to_discrete(std::get<DichotomicPovm>(povm));
}

std::string to_json(const DiscretePovm& povm) {
  Json j;
  j["outcomes"] = Json::array();
  j["effects"] = Json::array();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    j["outcomes"].push_back(povm.outcome(i));
    j["effects"].push_back(operator_json(povm.effect(i).op()));
  }
  return j.dump();
}

std::string to_json(const DichotomicPovm& povm) {
  return Json{{"gamma", povm.gamma()}, {"c", vector_json(povm.c())}}.dump();
}

std::string to_json(const CounterexampleReport& report, int indent) {
  Json j;
  j["name"] = report.name;
  j["all_passed"] = report.all_passed();
  j["inputs"] = Json::array();
  for (const auto& [name, op] : report.inputs) {
    Json item = operator_json(op);
    item["name"] = name;
    j["inputs"].push_back(std::move(item));
  }
  j["quantities"] = Json::object();
  for (const auto& [name, value] : report.quantities) j["quantities"][name] = real_json(value);
  j["assertions"] = Json::array();
  for (const Assertion& a : report.assertions) {
    j["assertions"].push_back(Json{{"label", a.label},
                                   {"expected", real_json(a.expected)},
                                   {"actual", real_json(a.actual)},
                                   {"tolerance", a.tolerance},
                                   {"relation", relation_name(a.relation)},
                                   {"pass", a.pass},
                                   {"paper_ref", a.provenance}});
  }
  return j.dump(indent);
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

CsvWriter::CsvWriter(std::ostream& out, std::span<const std::string_view> header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : CsvWriter(out, std::span<const std::string_view>(header.begin(), header.size())) {}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw std::invalid_argument("CsvWriter: wrong number of fields");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_real(values[i]);
  out_ << '\n';
}

void CsvWriter::raw_row(std::span<const std::string> fields) {
  if (fields.size() != columns_) throw std::invalid_argument("CsvWriter: wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
  out_ << '\n';
}

std::vector<BranciardRow> branciard_curve(double theta, int n) {
  if (n < 2) throw std::invalid_argument("branciard_curve: need at least two points");
  std::vector<BranciardRow> rows;
  const double rhs = std::sin(theta) * std::sin(theta);
  for (int k = 0; k < n; ++k) {
    const double phi = k == n - 1 ? theta : theta * k / (n - 1);
    const ErrorPair e = branciard_sharp_noise(theta, phi);
    rows.push_back({theta, phi, e.first, e.second, branciard_lhs(e.first, e.second, theta), rhs});
  }
  return rows;
}

std::vector<BoundaryPoint> yu_oh_curve(double theta, int n, int mu, int nu) {
  if (n < 2) throw std::invalid_argument("yu_oh_curve: need at least two points");
  std::vector<BoundaryPoint> rows;
  for (int k = 0; k < n; ++k) {
    const double phi = k == n - 1 ? kHalfPi : kHalfPi * k / (n - 1);
    rows.push_back(yu_oh_point(theta, phi, mu, nu));
  }
  return rows;
}

void write_yu_oh_csv(std::ostream& out, std::span<const BoundaryPoint> rows) {
  CsvWriter w(out, {"theta", "phi", "M2", "d_a", "d_b", "u_c", "u_d"});
  for (const BoundaryPoint& p : rows) w.row({p.theta, p.phi, p.m_squared, p.d_a, p.d_b, p.u_c, p.u_d});
}

void write_branciard_csv(std::ostream& out, std::span<const BranciardRow> rows) {
  CsvWriter w(out, {"theta", "phi", "eps_a", "eps_b", "lhs", "rhs"});
  for (const BranciardRow& r : rows) w.row({r.theta, r.phi, r.eps_a, r.eps_b, r.lhs, r.rhs});
}

void write_region_csv(std::ostream& out, std::uint64_t seed, double theta, std::span<const ErrorPoint> points) {
  CsvWriter w(out, {"seed", "theta", "measure", "e_a", "e_b"});
  const std::string seed_text = std::to_string(seed);
  const std::string theta_text = format_real(theta);
  for (const ErrorPoint& p : points) {
    const std::string fields[] = {seed_text, theta_text, std::string(to_string(p.measure)), format_real(p.e_a),
                                  format_real(p.e_b)};
    w.raw_row(fields);
  }
}

}  // namespace qmu
