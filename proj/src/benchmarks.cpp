#include "benchmarks.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "errors.hpp"

namespace svbench {

const char* to_string(Units u) { return u == Units::percent ? "percent" : "count"; }

namespace {

Units parse_units(const std::string& s) {
  if (s == "percent") return Units::percent;
  if (s == "count") return Units::count;
  raise(ErrorCode::config_parse, "unknown units '" + s + "'");
}

double require_param(const EstimatorRef& ref, const std::string& key) {
  auto it = ref.params.find(key);
  if (it == ref.params.end())
    raise(ErrorCode::bad_argument,
          "estimator '" + ref.id + "' requires parameter '" + key + "'");
  return it->second;
}

}  // namespace

BoundEstimator bind_estimator(const EstimatorRef& ref) {
  if (ref.id == "two_party_share")
    return {Units::percent, [](const SurveyDataset& d, WeightSpan w) {
              return two_party_share(d, w);
            }};
  if (ref.id == "births_total") {
    const double population = require_param(ref, "population_count");
    return {Units::count, [population](const SurveyDataset& d, WeightSpan w) {
              return births_total(d, w, population);
            }};
  }
  auto internet_component = [&](EstimateWithCI InternetShares::*member) {
    return BoundEstimator{Units::percent, [member](const SurveyDataset& d, WeightSpan w) {
                            EstimateWithCI e = internet_shares(d, w).*member;
                            e.point *= 100.0;
                            e.ci_low *= 100.0;
                            e.ci_high *= 100.0;
                            return e;
                          }};
  };
  if (ref.id == "internet_paid") return internet_component(&InternetShares::paid);
  if (ref.id == "internet_unpaid") return internet_component(&InternetShares::unpaid);
  if (ref.id == "internet_none") return internet_component(&InternetShares::none);
  raise(ErrorCode::bad_argument, "unknown estimator id '" + ref.id + "'");
}

BenchmarkScore score(const EstimateWithCI& estimate, const BenchmarkSpec& spec,
                     Units estimate_units) {
  if (estimate_units != spec.units)
    raise(ErrorCode::unit_mismatch, "estimate is in " + std::string(to_string(estimate_units)) +
                                        " but benchmark '" + spec.name + "' is in " +
                                        to_string(spec.units));
  BenchmarkScore s;
  s.estimate = estimate;
  s.signed_error = estimate.point - spec.truth;
  s.abs_error = std::abs(s.signed_error);
  s.covered = estimate.ci_low <= spec.truth && spec.truth <= estimate.ci_high;
  return s;
}

const BenchmarkSpec& BenchmarkRegistry::lookup(const std::string& name) const {
  auto it = specs_.find(name);
  if (it == specs_.end()) raise(ErrorCode::unknown_benchmark, "no benchmark named '" + name + "'");
  return it->second;
}

void BenchmarkRegistry::insert(BenchmarkSpec spec) {
  std::string name = spec.name;
  specs_[std::move(name)] = std::move(spec);
}

std::vector<std::string> BenchmarkRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : specs_) out.push_back(name);
  return out;
}

void BenchmarkRegistry::apply_overlay_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::missing_file, "cannot open benchmark overlay " + path);
  nlohmann::json j;
  try {
    in >> j;
    for (auto& [name, entry] : j.items()) {
      const bool existing = specs_.count(name) > 0;
      BenchmarkSpec spec = existing ? specs_[name] : BenchmarkSpec{};
      spec.name = name;
      if (entry.contains("truth")) spec.truth = entry["truth"].get<double>();
      if (entry.contains("units")) spec.units = parse_units(entry["units"].get<std::string>());
      if (entry.contains("scope")) spec.scope = entry["scope"].get<std::string>();
      if (entry.contains("estimator")) {
        const auto& est = entry["estimator"];
        if (est.contains("id")) spec.estimator.id = est["id"].get<std::string>();
        if (est.contains("params"))
          for (auto& [key, value] : est["params"].items())
            spec.estimator.params[key] = value.get<double>();
      }
      if (!existing && (!entry.contains("truth") || !entry.contains("units") ||
                        !entry.contains("estimator")))
        raise(ErrorCode::config_parse,
              path + ": new benchmark '" + name + "' needs truth, units and estimator");
      specs_[name] = std::move(spec);
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::config_parse, path + ": " + e.what());
  }
}

BenchmarkRegistry builtin_benchmarks() {
  BenchmarkRegistry reg;
  reg.insert({"house_vote_2022", 51.4, Units::percent, {"two_party_share", {}}, "national"});
  reg.insert({"births_national", 42091245.0, Units::count, {"births_total", {}}, "national"});
  reg.insert({"births_CA", 5121438.0, Units::count, {"births_total", {}}, "CA"});
  reg.insert({"births_FL", 2401935.0, Units::count, {"births_total", {}}, "FL"});
  reg.insert({"births_WI", 710933.0, Units::count, {"births_total", {}}, "WI"});
  reg.insert({"internet_paid", 92.3, Units::percent, {"internet_paid", {}}, "national"});
  reg.insert({"internet_unpaid", 2.05, Units::percent, {"internet_unpaid", {}}, "national"});
  return reg;
}

double cdc_2022_adjustment(const std::map<int, double>& births_by_year) {
  if (births_by_year.count(2022))
    raise(ErrorCode::unexpected_year, "2022 births must be absent; they are what gets estimated");
  double total = 0.0;
  for (int year = 2012; year <= 2021; ++year) {
    auto it = births_by_year.find(year);
    if (it == births_by_year.end())
      raise(ErrorCode::missing_year, "births count for " + std::to_string(year) + " is missing");
    total += it->second;
  }
  const double estimate_2022 =
      (births_by_year.at(2019) + births_by_year.at(2020) + births_by_year.at(2021)) / 3.0;
  return total + estimate_2022;
}

std::vector<ApproachFilter> default_grouping(const SurveyDataset& dataset) {
  std::vector<ApproachFilter> groups;
  FilterSpec all;
  all.general_population = true;
  groups.push_back({"All", all});
  FilterSpec prob;
  prob.frame_category = FrameCategory::probability;
  groups.push_back({"All Probability", prob});
  FilterSpec nonprob;
  nonprob.frame_category = FrameCategory::nonprobability;
  groups.push_back({"All Nonprobability", nonprob});

  std::set<std::string> seen;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    seen.insert(dataset.frame_of(dataset[i]).source_label);
  for (const auto& label : seen) {
    FilterSpec f;
    f.source_label = label;
    groups.push_back({label, f});
  }
  return groups;
}

std::vector<ScoreboardRow> scoreboard(const SurveyDataset& dataset, const MarginSpec& margin_spec,
                                      const MarginTargets& targets, const BenchmarkSpec& benchmark,
                                      const std::vector<ApproachFilter>& grouping,
                                      const RakeConfig& rake_config) {
  BoundEstimator estimator = bind_estimator(benchmark.estimator);
  std::vector<ScoreboardRow> rows;
  rows.reserve(grouping.size() * 2);

  for (const auto& group : grouping) {
    SurveyDataset subset = dataset.filter(group.filter);
    for (bool weighted : {false, true}) {
      ScoreboardRow row;
      row.approach = group.name;
      row.weighted = weighted;
      row.n = subset.size();
      try {
        if (subset.empty()) raise(ErrorCode::empty_denominator, "approach has no records");
        WeightVector wv;
        WeightSpan span;
        if (weighted) {
          wv = rake(assign_cells(subset, margin_spec), targets, rake_config);
          span = wv.weights;
          // Best-effort weights still produce an estimate, but flagged.
          if (!wv.converged) row.status = "NoConvergence";
        }
        EstimateWithCI estimate = estimator.run(subset, span);
        row.estimate = estimate;
        row.result = score(estimate, benchmark, estimator.units);
      } catch (const Error& e) {
        row.status = error_code_name(e.code());
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace svbench
