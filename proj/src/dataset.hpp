#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "schema.hpp"
#include "types.hpp"

namespace svbench {

struct Provenance {
  std::string source_path;
  std::string digest;  // FNV-1a of file bytes
  std::size_t row_count = 0;
};

// Conjunction of field tests. Empty spec matches everything.
struct FilterSpec {
  std::optional<std::string> state;
  std::optional<FrameCategory> frame_category;
  std::optional<std::string> source_label;
  std::vector<std::string> source_label_any;  // non-empty: label must be one of these
  std::optional<bool> national_frame;
  bool general_population = false;  // probability or nonprobability frames only
  std::optional<Mode> mode;
  bool births_eligible = false;
  std::optional<LikelyVoterRule> likely_voter;
};

// Immutable respondent table. Filtering returns a view over the same storage
// (original order preserved), so datasets are cheap to slice and safe to
// share across threads.
class SurveyDataset {
 public:
  SurveyDataset() = default;
  SurveyDataset(std::vector<RespondentRecord> records, std::vector<FrameKind> frames,
                Provenance provenance);

  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }

  const RespondentRecord& operator[](std::size_t i) const {
    return storage_->records[index_[i]];
  }
  const FrameKind& frame_of(const RespondentRecord& r) const {
    return storage_->frames[r.frame];
  }

  const std::vector<FrameKind>& frames() const { return storage_->frames; }
  const Provenance& provenance() const { return storage_->provenance; }

  bool matches(const FilterSpec& spec, std::size_t i) const;
  SurveyDataset filter(const FilterSpec& spec) const;
  std::size_t count_matching(const FilterSpec& spec) const;

  // View of the given in-view positions, in the order given (used to
  // materialize composite draws; unlike filter this does not re-sort into
  // original order).
  SurveyDataset subset(const std::vector<std::uint32_t>& positions) const;

  // Glues two views over the same storage, this first. Used to lay the
  // probability pool ahead of the nonprobability pool in draw index space.
  SurveyDataset concat(const SurveyDataset& other) const;

 private:
  struct Storage {
    std::vector<RespondentRecord> records;
    std::vector<FrameKind> frames;
    Provenance provenance;
  };

  std::shared_ptr<const Storage> storage_;
  std::vector<std::uint32_t> index_;
};

struct RowIssue {
  std::size_t row = 0;  // 1-based data row (header not counted)
  std::string column;
  std::string message;
  ErrorCode code = ErrorCode::bad_row_value;
};

struct LoadReport {
  std::optional<SurveyDataset> dataset;  // present only when issues is empty
  std::vector<RowIssue> issues;
  std::size_t rows_seen = 0;
};

// Parses every row, collecting row-level issues instead of stopping at the
// first problem. Type invariants (age >= 18, births top-code and
// eligibility, unique ids) are enforced here.
LoadReport load_survey_report(const std::string& path, const SchemaConfig& schema);

// Throwing wrapper: MissingColumn / BadCategoryCode / EmptyDataset etc.
SurveyDataset load_survey(const std::string& path, const SchemaConfig& schema);

struct CompositionRow {
  std::string source_label;
  std::size_t total = 0;
  std::size_t ca = 0;
  std::size_t fl = 0;
  std::size_t wi = 0;
};

// Per-frame counts with the CA/FL/WI oversample breakdown. Rows partition
// the dataset.
std::vector<CompositionRow> composition_summary(const SurveyDataset& dataset);

// Writes the dataset in the canonical delimited format load_survey consumes
// (with SchemaConfig::canonical() plus the dataset's own frame table).
void write_canonical(const SurveyDataset& dataset, std::ostream& os, char delimiter = ',');
void write_canonical_file(const SurveyDataset& dataset, const std::string& path);

// Canonical schema completed with this dataset's frames, suitable for
// reloading files produced by write_canonical.
SchemaConfig canonical_schema_for(const SurveyDataset& dataset);

}  // namespace svbench
