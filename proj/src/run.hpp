#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "benchmarks.hpp"
#include "sweep.hpp"
#include "synthetic.hpp"

namespace svbench {

struct ScoreboardRunConfig {
  std::vector<std::string> benchmarks;
  bool likely_voters = false;
  std::optional<std::vector<ApproachFilter>> grouping;  // default: auto
};

// One reproducible run, loaded from a JSON config file. All randomness flows
// from the single seed; it is recorded, with the config digest and the
// analysis assumptions, in every output file.
struct RunConfig {
  std::string config_path;
  std::string config_digest;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  std::string dataset_path;
  std::string schema_path;
  std::string margin_targets_path;
  std::string benchmarks_overlay_path;

  RakeConfig rake;

  bool has_scoreboard = false;
  ScoreboardRunConfig scoreboard;

  bool has_sweep = false;
  SweepConfig sweep;
  std::string sweep_benchmark;  // optional benchmark reference for metadata

  bool has_synth = false;
  SyntheticPopulationConfig synth;
  std::vector<FrameSpec> synth_frames;
  bool synth_emit_population = false;
};

RunConfig load_run_config(const std::string& path);

// "{\"frame_category\":\"probability\",\"national\":true,...}"
FilterSpec parse_filter_json(const std::string& json_text);

void apply_overrides(RunConfig& config, std::optional<std::uint64_t> seed,
                     const std::optional<std::string>& output_dir, std::optional<int> jobs);

struct ValidateResult {
  bool ok = false;
  std::size_t rows = 0;
  std::string report;  // "OK, N rows" or one line per issue
};

// Ingestion check: config paths first (config errors), then a full parse
// with row-level issues.
ValidateResult cmd_validate(const RunConfig& config);

// Each command returns the files it wrote. Errors are svbench::Error; the
// caller maps the family to an exit code.
std::vector<std::string> cmd_scoreboard(const RunConfig& config);
std::vector<std::string> cmd_sweep(const RunConfig& config);
std::vector<std::string> cmd_synth(const RunConfig& config);

// Registry with builtins plus the configured overlay applied.
BenchmarkRegistry load_benchmarks(const RunConfig& config);

}  // namespace svbench
