#pragma once

#include <string>
#include <vector>

#include "qmu/counterexamples.hpp"

namespace qmu::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Data behind one figure plus the checks it is expected to satisfy.
struct FigureData {
  std::string name;
  Table table;
  std::vector<Assertion> checks;

  bool all_passed() const;
};

/// Target angles used for the comparison figures: k pi / 12, k = 1..6.
std::vector<double> comparison_thetas();

/// Metric boundary for all four branch sign pairs.
FigureData figure_branches(int n_phi = 91);
/// Unsharpness tradeoff (u_c, u_d) along the boundary for a theta grid.
FigureData figure_unsharpness(int n_phi = 91);
/// Endpoints (lambda = 0, 1) of the saturating family for orthogonal targets.
FigureData figure_family_endpoints(int n_psi = 91);
/// Metric errors of the sharp noise-optimal scheme against the metric
/// boundary, sampled at matched d_a.
FigureData figure_metric_comparison(int n = 201);
/// Noise tradeoff evaluated on the metric-optimal approximators.
FigureData figure_noise_comparison(int n_phi = 91);

/// Throws std::invalid_argument unless id is 1, 2, 4, 5 or 6.
FigureData figure(int id);

}  // namespace qmu::cli
