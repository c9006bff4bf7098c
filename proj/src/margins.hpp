#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace svbench {

enum class MarginLevel { national, state };

// One weighting dimension: a name, its category labels, and a categorizer
// from respondent to category index.
struct MarginDimension {
  std::string name;
  std::vector<std::string> categories;
  int (*categorize)(const RespondentRecord&);  // returns -1 when not assignable
};

// The raking design. National: race/ethnicity (4), education (5),
// gender x age (12), region (4 census regions with CA/FL/WI carved out, 7).
// State: race/ethnicity (4), education collapsed to 4, gender x age
// collapsed to 6; no region dimension within a state.
struct MarginSpec {
  MarginLevel level = MarginLevel::national;
  std::vector<MarginDimension> dimensions;

  static const MarginSpec& national();
  static const MarginSpec& state();
};

// dimension name -> category label -> population share. Shares per dimension
// sum to 1 within 1e-9 and cover every spec category.
using MarginTargets = std::map<std::string, std::map<std::string, double>>;

// Validates coverage and share sums against a spec.
void validate_targets(const MarginTargets& targets, const MarginSpec& spec);

// Targets file: {"national": {...}, "states": {"CA": {...}, ...}}.
struct TargetsFile {
  MarginTargets national;
  std::map<std::string, MarginTargets> states;
};
TargetsFile load_margin_targets(const std::string& path);
void write_margin_targets(const TargetsFile& targets, const std::string& path);

// Per-dimension category index for every respondent of a dataset view.
struct CellAssignment {
  std::size_t n = 0;
  std::vector<std::string> dimension_names;
  std::vector<std::vector<std::string>> category_labels;   // per dimension
  std::vector<std::vector<std::uint16_t>> categories;      // [dimension][respondent]
};

// Errors with MissingWeightVariable (naming the respondent) when a record
// cannot be placed on some dimension, e.g. gender outside the male/female
// weighting cells.
CellAssignment assign_cells(const SurveyDataset& dataset, const MarginSpec& spec);

}  // namespace svbench
