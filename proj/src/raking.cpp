#include "raking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "errors.hpp"

namespace svbench {

namespace {

// Target shares in assignment order: [dimension][category].
std::vector<std::vector<double>> align_targets(const CellAssignment& a,
                                               const MarginTargets& targets) {
  std::vector<std::vector<double>> out(a.dimension_names.size());
  for (std::size_t d = 0; d < a.dimension_names.size(); ++d) {
    auto dim = targets.find(a.dimension_names[d]);
    if (dim == targets.end())
      raise(ErrorCode::bad_argument,
            "margin targets missing dimension '" + a.dimension_names[d] + "'");
    out[d].resize(a.category_labels[d].size());
    double sum = 0.0;
    for (std::size_t c = 0; c < a.category_labels[d].size(); ++c) {
      auto share = dim->second.find(a.category_labels[d][c]);
      if (share == dim->second.end())
        raise(ErrorCode::bad_argument, "margin targets for '" + a.dimension_names[d] +
                                           "' missing category '" + a.category_labels[d][c] + "'");
      out[d][c] = share->second;
      sum += share->second;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      raise(ErrorCode::bad_argument,
            "target shares for '" + a.dimension_names[d] + "' do not sum to 1");
  }
  return out;
}

}  // namespace

WeightVector rake(const CellAssignment& assignment, const MarginTargets& targets,
                  const RakeConfig& config) {
  const std::size_t n = assignment.n;
  const std::size_t ndims = assignment.dimension_names.size();
  auto target = align_targets(assignment, targets);

  // Per-dimension respondent counts drive the sparse-cell checks.
  std::vector<std::vector<std::size_t>> counts(ndims);
  for (std::size_t d = 0; d < ndims; ++d) {
    counts[d].assign(assignment.category_labels[d].size(), 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[d][assignment.categories[d][i]];
  }
  // Populated-but-sparse categories outrank empty ones, so a too-small
  // sample reads as InsufficientCells rather than EmptyTargetCell.
  auto cell_name = [&](std::size_t d, std::size_t c) {
    return assignment.dimension_names[d] + "/" + assignment.category_labels[d][c];
  };
  for (std::size_t d = 0; d < ndims; ++d)
    for (std::size_t c = 0; c < counts[d].size(); ++c)
      if (target[d][c] > 0.0 && counts[d][c] > 0 &&
          counts[d][c] < static_cast<std::size_t>(config.min_cell_count))
        raise(ErrorCode::insufficient_cells,
              "category " + cell_name(d, c) + " has " + std::to_string(counts[d][c]) +
                  " respondents, fewer than min_cell_count=" +
                  std::to_string(config.min_cell_count));
  for (std::size_t d = 0; d < ndims; ++d)
    for (std::size_t c = 0; c < counts[d].size(); ++c) {
      if (target[d][c] > 0.0 && counts[d][c] == 0)
        raise(ErrorCode::empty_target_cell,
              "category " + cell_name(d, c) + " has a positive target but no respondents");
      if (target[d][c] == 0.0 && counts[d][c] > 0)
        raise(ErrorCode::infeasible_target,
              "category " + cell_name(d, c) + " has respondents but a zero target; weights "
              "cannot stay positive while matching it");
    }

  // Collapse respondents into full demographic cells, keyed in mixed radix
  // and sorted so arithmetic order never depends on record order.
  std::vector<std::uint64_t> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t k = 0;
    for (std::size_t d = 0; d < ndims; ++d)
      k = k * assignment.category_labels[d].size() + assignment.categories[d][i];
    key[i] = k;
  }
  std::vector<std::uint64_t> cell_keys(key);
  std::sort(cell_keys.begin(), cell_keys.end());
  cell_keys.erase(std::unique(cell_keys.begin(), cell_keys.end()), cell_keys.end());
  const std::size_t ncells = cell_keys.size();

  std::vector<std::uint32_t> cell_of(n);
  for (std::size_t i = 0; i < n; ++i)
    cell_of[i] = static_cast<std::uint32_t>(
        std::lower_bound(cell_keys.begin(), cell_keys.end(), key[i]) - cell_keys.begin());

  std::vector<double> cell_count(ncells, 0.0);
  for (std::size_t i = 0; i < n; ++i) cell_count[cell_of[i]] += 1.0;

  // Category of each cell per dimension, decoded from the key.
  std::vector<std::vector<std::uint16_t>> cell_cat(ndims, std::vector<std::uint16_t>(ncells));
  for (std::size_t j = 0; j < ncells; ++j) {
    std::uint64_t k = cell_keys[j];
    for (std::size_t d = ndims; d-- > 0;) {
      std::uint64_t radix = assignment.category_labels[d].size();
      cell_cat[d][j] = static_cast<std::uint16_t>(k % radix);
      k /= radix;
    }
  }

  WeightVector result;
  if (n == 0) return result;  // unreachable after the checks above, kept for safety

  std::vector<double> w(ncells, 1.0);
  std::vector<double> margin;  // scratch, weighted mass per category

  auto current_gap = [&] {
    double gap = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < ncells; ++j) total += cell_count[j] * w[j];
    for (std::size_t d = 0; d < ndims; ++d) {
      margin.assign(counts[d].size(), 0.0);
      for (std::size_t j = 0; j < ncells; ++j) margin[cell_cat[d][j]] += cell_count[j] * w[j];
      for (std::size_t c = 0; c < margin.size(); ++c)
        gap = std::max(gap, std::abs(margin[c] / total - target[d][c]));
    }
    return gap;
  };

  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  while (iter < config.max_iterations) {
    ++iter;
    for (std::size_t d = 0; d < ndims; ++d) {
      margin.assign(counts[d].size(), 0.0);
      double total = 0.0;
      for (std::size_t j = 0; j < ncells; ++j) {
        double mass = cell_count[j] * w[j];
        margin[cell_cat[d][j]] += mass;
        total += mass;
      }
      for (std::size_t j = 0; j < ncells; ++j) {
        const std::uint16_t c = cell_cat[d][j];
        if (margin[c] > 0.0) w[j] *= target[d][c] * total / margin[c];
      }
    }
    gap = current_gap();
    result.gap_history.push_back(gap);
    if (gap <= config.tolerance) break;
  }

  // Mean-normalize so weighted and unweighted sample sizes coincide.
  auto normalize = [&] {
    double total = 0.0;
    for (std::size_t j = 0; j < ncells; ++j) total += cell_count[j] * w[j];
    const double mean = total / static_cast<double>(n);
    for (auto& x : w) x /= mean;
  };
  normalize();

  // Optional trim: clamp at cap x mean and renormalize until stable. Margins
  // drift when the cap binds, so the gap is recomputed afterwards.
  if (config.weight_cap) {
    const double cap = *config.weight_cap;
    for (int round = 0; round < 100; ++round) {
      bool clamped = false;
      for (auto& x : w)
        if (x > cap) {
          x = cap;
          clamped = true;
        }
      normalize();
      if (!clamped) break;
      double max_w = 0.0;
      for (double x : w) max_w = std::max(max_w, x);
      if (max_w <= cap * (1.0 + 1e-12)) break;
    }
    gap = current_gap();
    result.gap_history.push_back(gap);
  }

  result.iterations = iter;
  result.max_margin_gap = gap;
  result.converged = gap <= config.tolerance;

  result.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.weights[i] = w[cell_of[i]];
  return result;
}

WeightDiagnostics diagnose(const WeightVector& wv) {
  WeightDiagnostics d;
  const std::size_t n = wv.weights.size();
  if (n == 0) return d;
  double sum = 0.0, sumsq = 0.0;
  d.min_weight = wv.weights[0];
  d.max_weight = wv.weights[0];
  for (double w : wv.weights) {
    sum += w;
    sumsq += w * w;
    d.min_weight = std::min(d.min_weight, w);
    d.max_weight = std::max(d.max_weight, w);
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sumsq / static_cast<double>(n) - mean * mean;
  const double cv2 = std::max(0.0, var) / (mean * mean);
  d.design_effect = 1.0 + cv2;
  d.effective_n = static_cast<double>(n) / d.design_effect;
  return d;
}

}  // namespace svbench
