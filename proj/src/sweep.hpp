#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "benchmarks.hpp"

namespace svbench {

// The Monte Carlo composition sweep: fixed-size composite draws at a grid of
// probability/nonprobability mixes, each draw re-raked from scratch and
// estimated, summarized per increment.
struct SweepConfig {
  std::size_t draw_size = 1000;
  std::vector<double> increments = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int replicates = 500;
  std::uint64_t seed = 0;
  EstimatorRef estimator{"two_party_share", {}};
  int jobs = 1;
  bool keep_replicates = false;  // retain per-replicate estimates (tests)
};

struct IncrementSummary {
  double fraction = 0.0;     // probability share of the draw
  std::size_t k_prob = 0;    // = fraction * draw_size, exact
  std::size_t used = 0;      // replicates that produced an estimate
  std::size_t failures = 0;  // mostly rake refusals on sparse draws
  double mean = 0.0;
  double p2_5 = 0.0;   // order statistics of the replicate estimates
  double p97_5 = 0.0;
  bool unreliable = false;  // failures exceed 10% of replicates
  std::vector<double> estimates;  // populated when keep_replicates
};

struct SweepResult {
  std::vector<IncrementSummary> increments;
  std::size_t prob_pool_size = 0;
  std::size_t nonprob_pool_size = 0;
  std::size_t draws_executed = 0;
  SweepConfig config;  // echo
};

// Splits a dataset into the general-population probability and
// nonprobability pools. Registered-voter frames and single-state oversample
// frames stay out of both.
std::pair<SurveyDataset, SurveyDataset> partition_pools(const SurveyDataset& dataset);

// Uniform without-replacement draw of k_prob records from the probability
// pool and draw_size - k_prob from the nonprobability pool. Returns indices
// into the concatenated [probability | nonprobability] index space.
std::vector<std::uint32_t> draw_composite(const SurveyDataset& prob_pool,
                                          const SurveyDataset& nonprob_pool, std::size_t k_prob,
                                          std::size_t draw_size, std::mt19937_64& rng);

// Executes increments x replicates independent draws. Every draw is raked on
// its own (weights are never reused across draws), estimates come from each
// draw's weights, and summaries use percentile order statistics. Output is
// bit-identical for a given seed regardless of jobs.
SweepResult run_sweep(const SurveyDataset& dataset, const MarginSpec& margin_spec,
                      const MarginTargets& targets, const RakeConfig& rake_config,
                      const SweepConfig& config);

}  // namespace svbench
