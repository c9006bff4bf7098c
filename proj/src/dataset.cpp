#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <type_traits>
#include <fstream>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"
#include "text_table.hpp"

namespace svbench {

SurveyDataset::SurveyDataset(std::vector<RespondentRecord> records,
                             std::vector<FrameKind> frames, Provenance provenance) {
  auto storage = std::make_shared<Storage>();
  storage->records = std::move(records);
  storage->frames = std::move(frames);
  storage->provenance = std::move(provenance);
  index_.resize(storage->records.size());
  std::iota(index_.begin(), index_.end(), 0u);
  storage_ = std::move(storage);
}

bool SurveyDataset::matches(const FilterSpec& spec, std::size_t i) const {
  const RespondentRecord& r = (*this)[i];
  const FrameKind& fk = frame_of(r);
  if (spec.state && (!r.state || *r.state != *spec.state)) return false;
  if (spec.frame_category && fk.category != *spec.frame_category) return false;
  if (spec.source_label && fk.source_label != *spec.source_label) return false;
  if (!spec.source_label_any.empty() &&
      std::find(spec.source_label_any.begin(), spec.source_label_any.end(), fk.source_label) ==
          spec.source_label_any.end())
    return false;
  if (spec.national_frame && fk.national != *spec.national_frame) return false;
  if (spec.general_population && fk.category == FrameCategory::registered_voter) return false;
  if (spec.mode && r.mode != *spec.mode) return false;
  if (spec.births_eligible && !births_eligible(r)) return false;
  if (spec.likely_voter && !spec.likely_voter->passes(r.turnout_intent, r.interest)) return false;
  return true;
}

SurveyDataset SurveyDataset::filter(const FilterSpec& spec) const {
  SurveyDataset out;
  out.storage_ = storage_;
  for (std::size_t i = 0; i < size(); ++i)
    if (matches(spec, i)) out.index_.push_back(index_[i]);
  return out;
}

std::size_t SurveyDataset::count_matching(const FilterSpec& spec) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (matches(spec, i)) ++n;
  return n;
}

SurveyDataset SurveyDataset::subset(const std::vector<std::uint32_t>& positions) const {
  SurveyDataset out;
  out.storage_ = storage_;
  out.index_.reserve(positions.size());
  for (std::uint32_t p : positions) out.index_.push_back(index_.at(p));
  return out;
}

SurveyDataset SurveyDataset::concat(const SurveyDataset& other) const {
  if (storage_ != other.storage_)
    raise(ErrorCode::bad_argument, "cannot concatenate views over different datasets");
  SurveyDataset out;
  out.storage_ = storage_;
  out.index_ = index_;
  out.index_.insert(out.index_.end(), other.index_.begin(), other.index_.end());
  return out;
}

namespace {

struct ColumnMap {
  std::size_t idx[14];
};

template <typename Enum>
struct CodeEntry {
  const char* label;
  Enum value;
};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const CodeEntry<Enum> (&table)[N], const std::string& label) {
  for (const auto& e : table)
    if (label == e.label) return e.value;
  return std::nullopt;
}

constexpr CodeEntry<Mode> kModes[] = {{"phone", Mode::phone}, {"web", Mode::web}};
constexpr CodeEntry<Gender> kGenders[] = {
    {"man", Gender::man}, {"woman", Gender::woman}, {"other", Gender::other}};
constexpr CodeEntry<RaceEth> kRaces[] = {{"white_nh", RaceEth::white_nh},
                                         {"black_nh", RaceEth::black_nh},
                                         {"hispanic", RaceEth::hispanic},
                                         {"other_nh", RaceEth::other_nh}};
constexpr CodeEntry<Education> kEducations[] = {{"lt_hs", Education::lt_hs},
                                                {"hs", Education::hs},
                                                {"some_college", Education::some_college},
                                                {"ba", Education::ba},
                                                {"post_ba", Education::post_ba}};
constexpr CodeEntry<Region> kRegions[] = {{"northeast", Region::northeast},
                                          {"south", Region::south},
                                          {"midwest", Region::midwest},
                                          {"west", Region::west}};
constexpr CodeEntry<HouseVote> kVotes[] = {{"dem", HouseVote::dem},
                                           {"rep", HouseVote::rep},
                                           {"other", HouseVote::other},
                                           {"none", HouseVote::none},
                                           {"missing", HouseVote::missing}};
constexpr CodeEntry<TurnoutIntent> kTurnouts[] = {
    {"will_not_vote", TurnoutIntent::will_not_vote},
    {"lt_50_50", TurnoutIntent::lt_50_50},
    {"chances_50_50", TurnoutIntent::chances_50_50},
    {"probably", TurnoutIntent::probably},
    {"certain", TurnoutIntent::certain},
    {"already_voted", TurnoutIntent::already_voted},
    {"missing", TurnoutIntent::missing}};
constexpr CodeEntry<Interest> kInterests[] = {{"not_at_all", Interest::not_at_all},
                                              {"only_a_little", Interest::only_a_little},
                                              {"somewhat", Interest::somewhat},
                                              {"very", Interest::very},
                                              {"extremely", Interest::extremely},
                                              {"missing", Interest::missing}};
constexpr CodeEntry<Internet> kInternets[] = {{"paid", Internet::paid},
                                              {"unpaid", Internet::unpaid},
                                              {"none", Internet::none},
                                              {"missing", Internet::missing}};

}  // namespace

LoadReport load_survey_report(const std::string& path, const SchemaConfig& schema) {
  TextTable table = read_delimited(path, schema.delimiter);
  LoadReport report;
  report.rows_seen = table.rows.size();

  const auto& fields = record_field_names();
  ColumnMap cols{};
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const std::string& column = schema.columns.at(fields[f]);
    std::size_t idx = table.column_index(column);
    if (idx == TextTable::npos)
      raise(ErrorCode::missing_column,
            "schema maps field '" + fields[f] + "' to column '" + column +
                "' which is absent from " + path);
    cols.idx[f] = idx;
  }

  if (table.rows.empty()) raise(ErrorCode::empty_dataset, path + " contains a header but no rows");

  // frame table in declaration order of the schema config
  std::vector<FrameKind> frames;
  std::unordered_map<std::string, std::uint16_t> frame_index;
  for (const auto& [label, fk] : schema.frames) {
    frame_index[label] = static_cast<std::uint16_t>(frames.size());
    frames.push_back(fk);
  }

  std::vector<RespondentRecord> records;
  records.reserve(table.rows.size());
  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(table.rows.size());

  auto issue = [&](std::size_t row, const std::string& column, std::string message,
                   ErrorCode code = ErrorCode::bad_row_value) {
    report.issues.push_back({row, column, std::move(message), code});
  };

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const std::size_t row_no = r + 1;
    if (cells.size() != table.header.size()) {
      issue(row_no, "", "expected " + std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(cells.size()));
      continue;
    }
    bool row_ok = true;
    RespondentRecord rec;

    auto raw = [&](std::size_t f) -> const std::string& { return cells[cols.idx[f]]; };

    // Decodes one categorical field; nullptr means the code was not declared.
    auto decode_cell = [&](std::size_t f, bool allow_missing,
                           const std::string*& out) -> bool {
      const std::string& field = fields[f];
      const std::string& cell = raw(f);
      if (allow_missing && schema.is_missing_code(cell)) {
        out = nullptr;
        return true;
      }
      const std::string* label = schema.decode(field, cell);
      if (!label) {
        issue(row_no, field, "value '" + cell + "' is not in the declared code list",
              ErrorCode::bad_category_code);
        row_ok = false;
        return false;
      }
      out = label;
      return true;
    };

    auto set_enum = [&]<typename Enum, std::size_t N>(
                        std::size_t f, const CodeEntry<Enum> (&tbl)[N], Enum& dst,
                        std::type_identity_t<std::optional<Enum>> missing_value) {
      const std::string* label = nullptr;
      if (!decode_cell(f, missing_value.has_value(), label)) return;
      if (!label) {
        dst = *missing_value;
        return;
      }
      auto v = lookup(tbl, *label);
      if (!v) {
        issue(row_no, fields[f], "category label '" + *label + "' is not recognized",
              ErrorCode::bad_category_code);
        row_ok = false;
        return;
      }
      dst = *v;
    };

    // respondent_id
    rec.respondent_id = raw(0);
    if (rec.respondent_id.empty()) {
      issue(row_no, "respondent_id", "empty respondent_id");
      row_ok = false;
    } else if (!seen_ids.insert(rec.respondent_id).second) {
      issue(row_no, "respondent_id", "duplicate respondent_id '" + rec.respondent_id + "'",
            ErrorCode::duplicate_respondent);
      row_ok = false;
    }

    // frame
    {
      const std::string* label = nullptr;
      if (decode_cell(1, false, label)) {
        auto it = frame_index.find(*label);
        if (it == frame_index.end()) {
          issue(row_no, "frame", "source label '" + *label + "' is not declared in schema frames",
                ErrorCode::bad_category_code);
          row_ok = false;
        } else {
          rec.frame = it->second;
        }
      }
    }

    set_enum(2, kModes, rec.mode, std::nullopt);

    // state (nullable, 2-letter)
    {
      const std::string* label = nullptr;
      if (decode_cell(3, true, label)) {
        if (label) {
          if (label->size() != 2) {
            issue(row_no, "state", "state '" + *label + "' is not a 2-letter code");
            row_ok = false;
          } else {
            rec.state = *label;
          }
        }
      }
    }

    // age
    {
      const std::string& cell = raw(4);
      int age = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), age);
      if (ec != std::errc() || p != cell.data() + cell.size()) {
        issue(row_no, "age_years", "cannot parse age '" + cell + "'");
        row_ok = false;
      } else if (age < 18) {
        issue(row_no, "age_years", "age " + std::to_string(age) + " is below the adult minimum of 18");
        row_ok = false;
      } else {
        rec.age_years = age;
      }
    }

    set_enum(5, kGenders, rec.gender, std::nullopt);
    set_enum(6, kRaces, rec.race_eth, std::nullopt);
    set_enum(7, kEducations, rec.education, std::nullopt);
    set_enum(8, kRegions, rec.region, std::nullopt);
    set_enum(9, kVotes, rec.vote_house, HouseVote::missing);
    set_enum(10, kTurnouts, rec.turnout_intent, TurnoutIntent::missing);
    set_enum(11, kInterests, rec.interest, Interest::missing);

    // births_10yr (nullable int 0..6, only for eligible women)
    {
      const std::string& cell = raw(12);
      if (!schema.is_missing_code(cell)) {
        int births = 0;
        auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), births);
        if (ec != std::errc() || p != cell.data() + cell.size()) {
          issue(row_no, "births_10yr", "cannot parse births count '" + cell + "'");
          row_ok = false;
        } else if (births < 0 || births > 6) {
          issue(row_no, "births_10yr",
                "births count " + std::to_string(births) + " outside the top-coded range 0..6");
          row_ok = false;
        } else {
          rec.births_10yr = births;
        }
      }
    }

    set_enum(13, kInternets, rec.internet, Internet::missing);

    if (row_ok && rec.births_10yr && !births_eligible(rec)) {
      issue(row_no, "births_10yr",
            "births reported by a respondent outside the asked population (women 65 or younger)");
      row_ok = false;
    }

    if (row_ok) records.push_back(std::move(rec));
  }

  if (report.issues.empty()) {
    Provenance prov{path, fnv1a_file_digest(path), records.size()};
    report.dataset = SurveyDataset(std::move(records), std::move(frames), std::move(prov));
  }
  return report;
}

SurveyDataset load_survey(const std::string& path, const SchemaConfig& schema) {
  LoadReport report = load_survey_report(path, schema);
  if (!report.issues.empty()) {
    const RowIssue& first = report.issues.front();
    std::string msg = path + " row " + std::to_string(first.row);
    if (!first.column.empty()) msg += " column '" + first.column + "'";
    msg += ": " + first.message;
    if (report.issues.size() > 1)
      msg += " (and " + std::to_string(report.issues.size() - 1) + " more issues)";
    raise(first.code, msg);
  }
  return std::move(*report.dataset);
}

std::vector<CompositionRow> composition_summary(const SurveyDataset& dataset) {
  std::vector<CompositionRow> rows;
  std::unordered_map<std::string, std::size_t> by_label;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& rec = dataset[i];
    const std::string& label = dataset.frame_of(rec).source_label;
    auto it = by_label.find(label);
    if (it == by_label.end()) {
      it = by_label.emplace(label, rows.size()).first;
      rows.push_back(CompositionRow{label});
    }
    CompositionRow& row = rows[it->second];
    ++row.total;
    if (rec.state) {
      if (*rec.state == "CA") ++row.ca;
      else if (*rec.state == "FL") ++row.fl;
      else if (*rec.state == "WI") ++row.wi;
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const CompositionRow& a, const CompositionRow& b) {
              return a.source_label < b.source_label;
            });
  return rows;
}

void write_canonical(const SurveyDataset& dataset, std::ostream& os, char delimiter) {
  write_delimited_row(os, record_field_names(), delimiter);
  std::vector<std::string> cells(14);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& r = dataset[i];
    cells[0] = r.respondent_id;
    cells[1] = dataset.frame_of(r).source_label;
    cells[2] = to_string(r.mode);
    cells[3] = r.state ? *r.state : "";
    cells[4] = std::to_string(r.age_years);
    cells[5] = to_string(r.gender);
    cells[6] = to_string(r.race_eth);
    cells[7] = to_string(r.education);
    cells[8] = to_string(r.region);
    cells[9] = to_string(r.vote_house);
    cells[10] = to_string(r.turnout_intent);
    cells[11] = to_string(r.interest);
    cells[12] = r.births_10yr ? std::to_string(*r.births_10yr) : "";
    cells[13] = to_string(r.internet);
    write_delimited_row(os, cells, delimiter);
  }
}

void write_canonical_file(const SurveyDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::missing_file, "cannot write " + path);
  write_canonical(dataset, out);
}

SchemaConfig canonical_schema_for(const SurveyDataset& dataset) {
  SchemaConfig s = SchemaConfig::canonical();
  for (const auto& fk : dataset.frames()) s.frames[fk.source_label] = fk;
  return s;
}

}  // namespace svbench
