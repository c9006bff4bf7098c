#include "schema.hpp"

#include <fstream>

#include <json.hpp>

#include "errors.hpp"

namespace svbench {

const std::vector<std::string>& record_field_names() {
  static const std::vector<std::string> names = {
      "respondent_id", "frame", "mode", "state", "age_years", "gender", "race_eth",
      "education", "region", "vote_house", "turnout_intent", "interest", "births_10yr",
      "internet"};
  return names;
}

SchemaConfig SchemaConfig::canonical() {
  SchemaConfig s;
  for (const auto& f : record_field_names()) s.columns[f] = f;
  // Canonical files carry category labels directly, so no code tables are
  // needed; frames still must be declared by the caller or merged from the
  // emitting dataset.
  return s;
}

const std::string* SchemaConfig::decode(const std::string& field, const std::string& cell) const {
  auto table = codes.find(field);
  if (table == codes.end()) return &cell;
  auto hit = table->second.find(cell);
  if (hit == table->second.end()) return nullptr;
  return &hit->second;
}

bool SchemaConfig::is_missing_code(const std::string& cell) const {
  for (const auto& m : missing_codes)
    if (m == cell) return true;
  return false;
}

namespace {

FrameCategory parse_category(const std::string& s, const std::string& context) {
  if (s == "probability") return FrameCategory::probability;
  if (s == "nonprobability") return FrameCategory::nonprobability;
  if (s == "registered_voter") return FrameCategory::registered_voter;
  raise(ErrorCode::bad_schema, "unknown frame category '" + s + "' for " + context);
}

}  // namespace

SchemaConfig SchemaConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::missing_file, "cannot open schema config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::config_parse, path + ": " + e.what());
  }

  SchemaConfig s;
  try {
    if (j.contains("delimiter")) {
      std::string d = j["delimiter"].get<std::string>();
      if (d == "auto" || d.empty())
        s.delimiter = '\0';
      else if (d == "\\t" || d == "tab")
        s.delimiter = '\t';
      else
        s.delimiter = d[0];
    }
    if (!j.contains("columns")) raise(ErrorCode::bad_schema, path + ": missing 'columns'");
    for (auto& [field, col] : j["columns"].items()) s.columns[field] = col.get<std::string>();
    if (j.contains("codes"))
      for (auto& [field, table] : j["codes"].items())
        for (auto& [cell, label] : table.items())
          s.codes[field][cell] = label.get<std::string>();
    if (j.contains("missing_codes")) {
      s.missing_codes.clear();
      for (auto& m : j["missing_codes"]) s.missing_codes.push_back(m.get<std::string>());
    }
    if (!j.contains("frames")) raise(ErrorCode::bad_schema, path + ": missing 'frames'");
    for (auto& [label, def] : j["frames"].items()) {
      FrameKind fk;
      fk.source_label = label;
      fk.category = parse_category(def.at("category").get<std::string>(), label);
      fk.national = def.value("national", true);
      s.frames[label] = fk;
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::config_parse, path + ": " + e.what());
  }

  for (const auto& f : record_field_names())
    if (!s.columns.count(f))
      raise(ErrorCode::bad_schema, path + ": no column mapping for field '" + f + "'");
  return s;
}

void SchemaConfig::save(const std::string& path) const {
  nlohmann::json j;
  if (delimiter == '\t') j["delimiter"] = "tab";
  else if (delimiter != '\0') j["delimiter"] = std::string(1, delimiter);
  for (const auto& [field, col] : columns) j["columns"][field] = col;
  for (const auto& [field, table] : codes)
    for (const auto& [cell, label] : table) j["codes"][field][cell] = label;
  j["missing_codes"] = missing_codes;
  for (const auto& [label, fk] : frames) {
    j["frames"][label]["category"] = to_string(fk.category);
    j["frames"][label]["national"] = fk.national;
  }
  std::ofstream out(path);
  if (!out) raise(ErrorCode::missing_file, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace svbench
