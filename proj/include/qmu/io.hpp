#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmu/bounds.hpp"
#include "qmu/counterexamples.hpp"
#include "qmu/errors.hpp"
#include "qmu/qubit.hpp"

namespace qmu {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyPovm = std::variant<DichotomicPovm, DiscretePovm>;

/// Reads either {"outcomes": [...], "effects": [{"alpha": a, "vec": [x, y, z]}, ...]}
/// or the dichotomic shorthand {"gamma": g, "c": [x, y, z]}.
/// Throws ParseError for malformed JSON or an invalid POVM.
AnyPovm parse_povm(std::string_view text);

/// Conversions between the two forms. as_dichotomic requires the outcome
/// set {+1, -1}; throws ParseError otherwise.
DichotomicPovm as_dichotomic(const AnyPovm& povm);
DiscretePovm as_discrete(const AnyPovm& povm);

std::string to_json(const DiscretePovm& povm);
std::string to_json(const DichotomicPovm& povm);
std::string to_json(const CounterexampleReport& report, int indent = 2);

/// 17 significant digits, enough to read back the same double.
std::string format_real(double v);

/// Minimal CSV writer: LF line endings, no quoting (fields never contain
/// separators).
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::span<const std::string_view> header);
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
  /// Row of preformatted fields.
  void raw_row(std::span<const std::string> fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

struct BranciardRow {
  double theta = 0.0;
  double phi = 0.0;
  double eps_a = 0.0;
  double eps_b = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Sharp-approximator curve: offset phi = theta * k / (n - 1), k = 0..n-1.
std::vector<BranciardRow> branciard_curve(double theta, int n);
/// Metric boundary sampled at phi = (pi/2) k / (n - 1).
std::vector<BoundaryPoint> yu_oh_curve(double theta, int n, int mu = 1, int nu = 1);

void write_yu_oh_csv(std::ostream& out, std::span<const BoundaryPoint> rows);
void write_branciard_csv(std::ostream& out, std::span<const BranciardRow> rows);
void write_region_csv(std::ostream& out, std::uint64_t seed, double theta, std::span<const ErrorPoint> points);

}  // namespace qmu
