#include "margins.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "errors.hpp"

namespace svbench {

namespace {

int categorize_race(const RespondentRecord& r) { return static_cast<int>(r.race_eth); }

int categorize_education5(const RespondentRecord& r) { return static_cast<int>(r.education); }

// State-level education collapses lt_hs and hs into one category.
int categorize_education4(const RespondentRecord& r) {
  switch (r.education) {
    case Education::lt_hs:
    case Education::hs: return 0;
    case Education::some_college: return 1;
    case Education::ba: return 2;
    case Education::post_ba: return 3;
  }
  return -1;
}

int age_band6(int age) {
  if (age < 25) return 0;
  if (age < 35) return 1;
  if (age < 45) return 2;
  if (age < 55) return 3;
  if (age < 65) return 4;
  return 5;
}

int categorize_gender_age12(const RespondentRecord& r) {
  if (r.gender == Gender::other) return -1;
  int g = r.gender == Gender::man ? 0 : 1;
  return g * 6 + age_band6(r.age_years);
}

int categorize_gender_age6(const RespondentRecord& r) {
  if (r.gender == Gender::other) return -1;
  int g = r.gender == Gender::man ? 0 : 1;
  int band = r.age_years < 35 ? 0 : (r.age_years < 55 ? 1 : 2);
  return g * 3 + band;
}

// Four census regions with the three oversampled states carved out, so the
// oversamples are weighted back to their population shares.
int categorize_region7(const RespondentRecord& r) {
  if (r.state) {
    if (*r.state == "CA") return 4;
    if (*r.state == "FL") return 5;
    if (*r.state == "WI") return 6;
  }
  return static_cast<int>(r.region);
}

std::vector<std::string> gender_age12_labels() {
  const char* bands[] = {"18_24", "25_34", "35_44", "45_54", "55_64", "65_plus"};
  std::vector<std::string> out;
  for (const char* g : {"male", "female"})
    for (const char* b : bands) out.push_back(std::string(g) + "_" + b);
  return out;
}

std::vector<std::string> gender_age6_labels() {
  const char* bands[] = {"18_34", "35_54", "55_plus"};
  std::vector<std::string> out;
  for (const char* g : {"male", "female"})
    for (const char* b : bands) out.push_back(std::string(g) + "_" + b);
  return out;
}

MarginSpec build_national() {
  MarginSpec spec;
  spec.level = MarginLevel::national;
  spec.dimensions = {
      {"race_eth", {"white_nh", "black_nh", "hispanic", "other_nh"}, categorize_race},
      {"education", {"lt_hs", "hs", "some_college", "ba", "post_ba"}, categorize_education5},
      {"gender_age", gender_age12_labels(), categorize_gender_age12},
      {"region", {"northeast", "south", "midwest", "west", "CA", "FL", "WI"}, categorize_region7},
  };
  return spec;
}

MarginSpec build_state() {
  MarginSpec spec;
  spec.level = MarginLevel::state;
  spec.dimensions = {
      {"race_eth", {"white_nh", "black_nh", "hispanic", "other_nh"}, categorize_race},
      {"education", {"hs_or_less", "some_college", "ba", "post_ba"}, categorize_education4},
      {"gender_age", gender_age6_labels(), categorize_gender_age6},
  };
  return spec;
}

}  // namespace

const MarginSpec& MarginSpec::national() {
  static const MarginSpec spec = build_national();
  return spec;
}

const MarginSpec& MarginSpec::state() {
  static const MarginSpec spec = build_state();
  return spec;
}

void validate_targets(const MarginTargets& targets, const MarginSpec& spec) {
  for (const auto& dim : spec.dimensions) {
    auto it = targets.find(dim.name);
    if (it == targets.end())
      raise(ErrorCode::bad_argument, "margin targets missing dimension '" + dim.name + "'");
    double sum = 0.0;
    for (const auto& cat : dim.categories) {
      auto share = it->second.find(cat);
      if (share == it->second.end())
        raise(ErrorCode::bad_argument,
              "margin targets for '" + dim.name + "' missing category '" + cat + "'");
      if (share->second < 0.0 || share->second > 1.0)
        raise(ErrorCode::bad_argument,
              "target share for " + dim.name + "/" + cat + " outside [0,1]");
      sum += share->second;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      raise(ErrorCode::bad_argument, "target shares for '" + dim.name + "' sum to " +
                                         std::to_string(sum) + ", expected 1");
    for (const auto& [cat, share] : it->second) {
      (void)share;
      bool known = false;
      for (const auto& c : dim.categories) known = known || c == cat;
      if (!known)
        raise(ErrorCode::bad_argument,
              "margin targets for '" + dim.name + "' name unknown category '" + cat + "'");
    }
  }
}

namespace {

MarginTargets targets_from_json(const nlohmann::json& j) {
  MarginTargets t;
  for (auto& [dim, cats] : j.items())
    for (auto& [cat, share] : cats.items()) t[dim][cat] = share.get<double>();
  return t;
}

nlohmann::json targets_to_json(const MarginTargets& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [dim, cats] : t)
    for (const auto& [cat, share] : cats) j[dim][cat] = share;
  return j;
}

}  // namespace

TargetsFile load_margin_targets(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::missing_file, "cannot open margin targets " + path);
  nlohmann::json j;
  try {
    in >> j;
    TargetsFile file;
    if (!j.contains("national"))
      raise(ErrorCode::config_parse, path + ": missing 'national' targets");
    file.national = targets_from_json(j["national"]);
    if (j.contains("states"))
      for (auto& [state, t] : j["states"].items()) file.states[state] = targets_from_json(t);
    return file;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::config_parse, path + ": " + e.what());
  }
}

void write_margin_targets(const TargetsFile& targets, const std::string& path) {
  nlohmann::json j;
  j["national"] = targets_to_json(targets.national);
  for (const auto& [state, t] : targets.states) j["states"][state] = targets_to_json(t);
  std::ofstream out(path);
  if (!out) raise(ErrorCode::missing_file, "cannot write " + path);
  out << j.dump(2) << '\n';
}

CellAssignment assign_cells(const SurveyDataset& dataset, const MarginSpec& spec) {
  CellAssignment a;
  a.n = dataset.size();
  for (const auto& dim : spec.dimensions) {
    a.dimension_names.push_back(dim.name);
    a.category_labels.push_back(dim.categories);
  }
  a.categories.resize(spec.dimensions.size());
  for (auto& v : a.categories) v.resize(a.n);

  for (std::size_t i = 0; i < a.n; ++i) {
    const RespondentRecord& r = dataset[i];
    for (std::size_t d = 0; d < spec.dimensions.size(); ++d) {
      int cat = spec.dimensions[d].categorize(r);
      if (cat < 0)
        raise(ErrorCode::missing_weight_variable,
              "respondent '" + r.respondent_id + "' cannot be placed on dimension '" +
                  spec.dimensions[d].name + "'");
      a.categories[d][i] = static_cast<std::uint16_t>(cat);
    }
  }
  return a;
}

}  // namespace svbench
