#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "margins.hpp"

namespace svbench {

// Validation harness: synthetic populations with exact, enumerated truths.
// The pipeline is scored against these because the paper's own numbers
// require the archived survey file.

// Additive adjustment to an outcome parameter for records in one category.
struct CellAdjustment {
  std::string dimension;  // national margin dimension name
  std::string category;
  double delta = 0.0;
};

struct OutcomeModel {
  double base = 0.0;  // probability (proportions) or rate (births)
  std::vector<CellAdjustment> adjustments;
};

struct SyntheticPopulationConfig {
  std::size_t population_size = 100000;
  std::uint64_t seed = 1;

  // Category shares per national margin dimension; defaults are filled by
  // default_demographics() when empty.
  MarginTargets demographics;

  OutcomeModel p_rep_two_party{0.514, {}};  // Republican share of the two-party vote
  double p_non_two_party = 0.1;             // other / none / item nonresponse combined
  OutcomeModel births_rate{0.8, {}};        // births per eligible woman over 10 years
  OutcomeModel p_internet_paid{0.923, {}};
  OutcomeModel p_internet_unpaid{0.0205, {}};  // remainder has no access
};

MarginTargets default_demographics();

struct SyntheticPerson {
  RespondentRecord record;  // frame unset; outcomes filled
  int births_uncapped = 0;
};

struct ScopeTruths {
  double two_party_rep_pct = 0.0;         // percent
  double births_total = 0.0;              // top-coded, matching the instrument
  double births_total_uncapped = 0.0;
  std::size_t births_eligible_count = 0;  // women 18..65
  double internet_paid_pct = 0.0;
  double internet_unpaid_pct = 0.0;
  double internet_none_pct = 0.0;
};

// Exact tabulations over the realized population (not the model parameters).
struct TrueValues {
  std::size_t population_size = 0;
  ScopeTruths national;
  std::map<std::string, ScopeTruths> by_state;         // CA/FL/WI
  MarginTargets realized_margins;                      // national margin shares, exact
  std::map<std::string, MarginTargets> state_margins;  // CA/FL/WI, state spec
};

struct Population {
  std::vector<SyntheticPerson> people;
  TrueValues truths;
};

Population generate_population(const SyntheticPopulationConfig& config);

struct CellMultiplier {
  std::string dimension;
  std::string category;
  double factor = 1.0;  // must stay positive
};

// Selection-propensity multipliers for one frame; identity means simple
// random sampling.
struct FrameBias {
  std::vector<CellMultiplier> demographic;
  std::map<std::string, double> by_vote;  // house-vote label -> multiplier
  std::map<std::string, double> by_internet;
};

struct FrameSpec {
  FrameKind kind;
  Mode mode = Mode::web;
  std::size_t sample_size = 0;
  FrameBias bias;
};

// Draws every frame without replacement with probability proportional to
// propensity, labels records, and assembles a survey dataset.
SurveyDataset sample_frames(const Population& population, const std::vector<FrameSpec>& frames,
                            std::uint64_t seed);

// Targets file (national + per-state) from the realized margins, the natural
// raking targets for pipeline tests on synthetic data.
TargetsFile targets_from_truths(const TrueValues& truths);

void write_truths(const TrueValues& truths, const std::string& path);

// Benchmark overlay (synthetic_house_vote, synthetic_births_national,
// synthetic_births_CA, ..., synthetic_internet_paid, ...) with estimator
// parameters already filled, so a run config can score straight against the
// generated population.
void write_truth_benchmarks(const TrueValues& truths, const std::string& path);

}  // namespace svbench
