#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "estimators.hpp"

namespace svbench {

enum class Units { percent, count };
const char* to_string(Units u);

// Reference to a registered estimator plus its parameters (e.g. the census
// count of eligible women for the births extrapolation).
struct EstimatorRef {
  std::string id;  // two_party_share | births_total | internet_paid | internet_unpaid | internet_none
  std::map<std::string, double> params;
};

struct BoundEstimator {
  Units units;
  std::function<EstimateWithCI(const SurveyDataset&, WeightSpan)> run;
};

// Resolves an estimator id, validating parameters. Percent-scaled internet
// entries exist so percent benchmarks score in percentage points.
BoundEstimator bind_estimator(const EstimatorRef& ref);

// A named population truth and the estimator that targets it.
struct BenchmarkSpec {
  std::string name;
  double truth = 0.0;
  Units units = Units::percent;
  EstimatorRef estimator;
  std::string scope = "national";  // "national" or a 2-letter state code
};

struct BenchmarkScore {
  EstimateWithCI estimate;
  double signed_error = 0.0;  // point - truth
  double abs_error = 0.0;
  bool covered = false;  // truth inside [ci_low, ci_high]
};

BenchmarkScore score(const EstimateWithCI& estimate, const BenchmarkSpec& spec,
                     Units estimate_units);

class BenchmarkRegistry {
 public:
  const BenchmarkSpec& lookup(const std::string& name) const;
  void insert(BenchmarkSpec spec);
  std::vector<std::string> names() const;

  // Overlay entries replace fields of an existing benchmark of the same name
  // or define a new one outright (then truth/units/estimator are required).
  void apply_overlay_file(const std::string& path);

 private:
  std::map<std::string, BenchmarkSpec> specs_;
};

// The paper's truths: 2022 House two-party vote, births since 2012
// (national and CA/FL/WI), ACS 2021 internet access. All editable via
// overlay because benchmark truths get refreshed over time.
BenchmarkRegistry builtin_benchmarks();

// Completes a 2012..2021 birth series with a 2022 value estimated as the
// mean of 2019-2021, returning the ten-year total.
double cdc_2022_adjustment(const std::map<int, double>& births_by_year);

// One approach filter in a scoreboard grouping.
struct ApproachFilter {
  std::string name;
  FilterSpec filter;
};

// All / All Probability / All Nonprobability plus one entry per source
// label present in the dataset. The three combined groups target the adult
// general population, so registered-voter frames appear only individually.
std::vector<ApproachFilter> default_grouping(const SurveyDataset& dataset);

struct ScoreboardRow {
  std::string approach;
  bool weighted = false;
  std::string status = "ok";  // or the error name, e.g. InsufficientCells
  std::size_t n = 0;
  std::optional<EstimateWithCI> estimate;
  std::optional<BenchmarkScore> result;
};

// One row per (approach, weighting) pair; per-row failures are recorded in
// status and never abort the rest of the table.
std::vector<ScoreboardRow> scoreboard(const SurveyDataset& dataset, const MarginSpec& margin_spec,
                                      const MarginTargets& targets, const BenchmarkSpec& benchmark,
                                      const std::vector<ApproachFilter>& grouping,
                                      const RakeConfig& rake_config = {});

}  // namespace svbench
