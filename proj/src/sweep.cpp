#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"

namespace svbench {

std::pair<SurveyDataset, SurveyDataset> partition_pools(const SurveyDataset& dataset) {
  FilterSpec prob;
  prob.frame_category = FrameCategory::probability;
  prob.national_frame = true;
  FilterSpec nonprob;
  nonprob.frame_category = FrameCategory::nonprobability;
  nonprob.national_frame = true;

  SurveyDataset prob_pool = dataset.filter(prob);
  SurveyDataset nonprob_pool = dataset.filter(nonprob);
  if (prob_pool.empty()) raise(ErrorCode::empty_pool, "probability pool is empty");
  if (nonprob_pool.empty()) raise(ErrorCode::empty_pool, "nonprobability pool is empty");
  return {std::move(prob_pool), std::move(nonprob_pool)};
}

namespace {

// k distinct values from [0, n), via partial Fisher-Yates on a caller-owned
// scratch vector.
void sample_without_replacement(std::size_t k, std::size_t n, std::mt19937_64& rng,
                                std::vector<std::uint32_t>& scratch,
                                std::vector<std::uint32_t>& out) {
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), 0u);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(scratch[i], scratch[j]);
    out.push_back(scratch[i]);
  }
}

std::size_t percentile_rank(double q, std::size_t m) {
  // nearest-rank: smallest index covering a q fraction of the sample
  std::size_t r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(m)));
  return std::clamp<std::size_t>(r, 1, m) - 1;  // to 0-based
}

}  // namespace

std::vector<std::uint32_t> draw_composite(const SurveyDataset& prob_pool,
                                          const SurveyDataset& nonprob_pool, std::size_t k_prob,
                                          std::size_t draw_size, std::mt19937_64& rng) {
  if (k_prob > prob_pool.size())
    raise(ErrorCode::pool_too_small, "need " + std::to_string(k_prob) +
                                         " probability records, pool has " +
                                         std::to_string(prob_pool.size()));
  if (draw_size - k_prob > nonprob_pool.size())
    raise(ErrorCode::pool_too_small, "need " + std::to_string(draw_size - k_prob) +
                                         " nonprobability records, pool has " +
                                         std::to_string(nonprob_pool.size()));
  std::vector<std::uint32_t> out;
  out.reserve(draw_size);
  std::vector<std::uint32_t> scratch;
  sample_without_replacement(k_prob, prob_pool.size(), rng, scratch, out);
  std::size_t before = out.size();
  sample_without_replacement(draw_size - k_prob, nonprob_pool.size(), rng, scratch, out);
  const auto offset = static_cast<std::uint32_t>(prob_pool.size());
  for (std::size_t i = before; i < out.size(); ++i) out[i] += offset;
  return out;
}

SweepResult run_sweep(const SurveyDataset& dataset, const MarginSpec& margin_spec,
                      const MarginTargets& targets, const RakeConfig& rake_config,
                      const SweepConfig& config) {
  if (config.replicates < 2) raise(ErrorCode::bad_argument, "replicates must be at least 2");
  if (config.increments.empty()) raise(ErrorCode::bad_argument, "no increments given");
  if (config.draw_size == 0) raise(ErrorCode::bad_argument, "draw_size must be positive");

  auto [prob_pool, nonprob_pool] = partition_pools(dataset);
  const std::size_t pool_p = prob_pool.size();
  const std::size_t pool_n = nonprob_pool.size();

  // Composition grid: every fraction must hit an integer respondent count.
  std::vector<std::size_t> k_prob_of(config.increments.size());
  for (std::size_t inc = 0; inc < config.increments.size(); ++inc) {
    const double f = config.increments[inc];
    if (f < 0.0 || f > 1.0)
      raise(ErrorCode::bad_argument, "increment fraction " + std::to_string(f) + " outside [0,1]");
    const double exact = f * static_cast<double>(config.draw_size);
    const double rounded = std::round(exact);
    if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact))
      raise(ErrorCode::bad_argument,
            "increment " + std::to_string(f) + " x draw_size " +
                std::to_string(config.draw_size) + " is not an integer");
    k_prob_of[inc] = static_cast<std::size_t>(rounded);
    if (k_prob_of[inc] > pool_p || config.draw_size - k_prob_of[inc] > pool_n)
      raise(ErrorCode::pool_too_small,
            "pools (" + std::to_string(pool_p) + " probability, " + std::to_string(pool_n) +
                " nonprobability) cannot supply increment " + std::to_string(f) +
                " at draw_size " + std::to_string(config.draw_size));
  }

  // Concatenated view [probability | nonprobability]; categorized once so
  // replicates only gather.
  SurveyDataset combined = prob_pool.concat(nonprob_pool);
  CellAssignment union_cells = assign_cells(combined, margin_spec);
  BoundEstimator estimator = bind_estimator(config.estimator);

  const std::size_t reps = static_cast<std::size_t>(config.replicates);
  const std::size_t total_tasks = config.increments.size() * reps;
  std::vector<std::optional<double>> estimates(total_tasks);

  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    std::vector<std::uint32_t> scratch;
    CellAssignment draw_cells;
    draw_cells.dimension_names = union_cells.dimension_names;
    draw_cells.category_labels = union_cells.category_labels;
    draw_cells.categories.resize(union_cells.categories.size());

    for (;;) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= total_tasks) break;
      const std::size_t inc = task / reps;
      const std::size_t rep = task % reps;
      const std::size_t k_prob = k_prob_of[inc];

      auto rng = make_stream(config.seed, (static_cast<std::uint64_t>(inc) << 32) | rep);
      std::vector<std::uint32_t> draw =
          draw_composite(prob_pool, nonprob_pool, k_prob, config.draw_size, rng);

#ifndef NDEBUG
      for (std::size_t t = 0; t < draw.size(); ++t)
        assert((t < k_prob) == (draw[t] < pool_p) && "composition exactness");
#endif

      try {
        draw_cells.n = draw.size();
        for (std::size_t d = 0; d < draw_cells.categories.size(); ++d) {
          auto& dst = draw_cells.categories[d];
          const auto& src = union_cells.categories[d];
          dst.resize(draw.size());
          for (std::size_t t = 0; t < draw.size(); ++t) dst[t] = src[draw[t]];
        }
        WeightVector wv = rake(draw_cells, targets, rake_config);
        EstimateWithCI est = estimator.run(combined.subset(draw), wv.weights);
        estimates[task] = est.point;
      } catch (const Error&) {
        // sparse draw: recorded as a failure, sweep continues
      }
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  SweepResult result;
  result.config = config;
  result.prob_pool_size = pool_p;
  result.nonprob_pool_size = pool_n;
  result.draws_executed = total_tasks;

  for (std::size_t inc = 0; inc < config.increments.size(); ++inc) {
    IncrementSummary s;
    s.fraction = config.increments[inc];
    s.k_prob = k_prob_of[inc];
    std::vector<double> ok;
    ok.reserve(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const auto& e = estimates[inc * reps + rep];
      if (e) ok.push_back(*e);
    }
    s.used = ok.size();
    s.failures = reps - ok.size();
    s.unreliable = s.failures * 10 > reps;
    if (!ok.empty()) {
      s.mean = std::accumulate(ok.begin(), ok.end(), 0.0) / static_cast<double>(ok.size());
      std::vector<double> sorted(ok);
      std::sort(sorted.begin(), sorted.end());
      s.p2_5 = sorted[percentile_rank(0.025, sorted.size())];
      s.p97_5 = sorted[percentile_rank(0.975, sorted.size())];
    } else {
      s.mean = s.p2_5 = s.p97_5 = std::numeric_limits<double>::quiet_NaN();
      s.unreliable = true;
    }
    if (config.keep_replicates) s.estimates = std::move(ok);
    result.increments.push_back(std::move(s));
  }
  return result;
}

}  // namespace svbench
