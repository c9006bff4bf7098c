#pragma once

#include <optional>
#include <vector>

#include "margins.hpp"

namespace svbench {

struct RakeConfig {
  double tolerance = 1e-6;     // on the max absolute margin gap
  int max_iterations = 100;    // full sweeps over all dimensions
  int min_cell_count = 5;      // below this a populated target category refuses to rake
  std::optional<double> weight_cap;  // optional trim at cap x mean; off by default
};

// Calibration weights for one dataset view, mean-normalized to 1.
struct WeightVector {
  std::vector<double> weights;
  bool converged = false;
  int iterations = 0;
  double max_margin_gap = 0.0;
  std::vector<double> gap_history;  // gap after each sweep
};

struct WeightDiagnostics {
  double design_effect = 1.0;  // Kish: 1 + cv^2 of the weights
  double effective_n = 0.0;    // n / design_effect
  double min_weight = 0.0;
  double max_weight = 0.0;
};

// Iterative proportional fitting over the assignment's dimensions.
//
// Respondents sharing one full demographic cell always carry equal weight, so
// the fit runs on collapsed cells in a canonical order; results are therefore
// bit-identical under record permutation or duplication. NoConvergence is not
// an error: the best-effort vector comes back flagged converged=false.
WeightVector rake(const CellAssignment& assignment, const MarginTargets& targets,
                  const RakeConfig& config = {});

WeightDiagnostics diagnose(const WeightVector& weights);

}  // namespace svbench
