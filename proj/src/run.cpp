#include "run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "text_table.hpp"
#include "version.hpp"

namespace svbench {

namespace {

using nlohmann::json;

FilterSpec filter_from_json(const json& j) {
  FilterSpec f;
  if (j.contains("state")) f.state = j["state"].get<std::string>();
  if (j.contains("frame_category")) {
    const std::string c = j["frame_category"].get<std::string>();
    if (c == "probability") f.frame_category = FrameCategory::probability;
    else if (c == "nonprobability") f.frame_category = FrameCategory::nonprobability;
    else if (c == "registered_voter") f.frame_category = FrameCategory::registered_voter;
    else raise(ErrorCode::config_parse, "unknown frame_category '" + c + "'");
  }
  if (j.contains("source_label")) f.source_label = j["source_label"].get<std::string>();
  if (j.contains("source_label_any"))
    for (const auto& label : j["source_label_any"])
      f.source_label_any.push_back(label.get<std::string>());
  if (j.contains("national")) f.national_frame = j["national"].get<bool>();
  if (j.contains("general_population")) f.general_population = j["general_population"].get<bool>();
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "phone") f.mode = Mode::phone;
    else if (m == "web") f.mode = Mode::web;
    else raise(ErrorCode::config_parse, "unknown mode '" + m + "'");
  }
  if (j.contains("births_eligible")) f.births_eligible = j["births_eligible"].get<bool>();
  if (j.contains("likely_voter") && j["likely_voter"].get<bool>()) f.likely_voter = LikelyVoterRule{};
  return f;
}

OutcomeModel outcome_from_json(const json& j) {
  OutcomeModel m;
  if (j.is_number()) {
    m.base = j.get<double>();
    return m;
  }
  m.base = j.at("base").get<double>();
  if (j.contains("adjustments"))
    for (const auto& adj : j["adjustments"])
      m.adjustments.push_back({adj.at("dimension").get<std::string>(),
                               adj.at("category").get<std::string>(),
                               adj.at("delta").get<double>()});
  return m;
}

MarginTargets margins_from_json(const json& j) {
  MarginTargets t;
  for (auto& [dim, cats] : j.items())
    for (auto& [cat, share] : cats.items()) t[dim][cat] = share.get<double>();
  return t;
}

std::vector<double> increments_from_json(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
  }
  const double from = j.at("from").get<double>();
  const double to = j.at("to").get<double>();
  const double step = j.at("step").get<double>();
  if (step <= 0) raise(ErrorCode::config_parse, "increment step must be positive");
  for (double f = from; f <= to + 1e-12; f += step) out.push_back(std::min(f, to));
  return out;
}

}  // namespace

FilterSpec parse_filter_json(const std::string& json_text) {
  try {
    return filter_from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    raise(ErrorCode::config_parse, std::string("filter: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::missing_file, "cannot open run config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::config_parse, path + ": " + e.what());
  }

  RunConfig cfg;
  cfg.config_path = path;
  cfg.config_digest = fnv1a_file_digest(path);
  try {
    cfg.output_dir = j.value("output_dir", std::string("out"));
    cfg.seed = j.value("seed", 1ull);
    cfg.dataset_path = j.value("dataset", std::string());
    cfg.schema_path = j.value("schema", std::string());
    cfg.margin_targets_path = j.value("margin_targets", std::string());
    cfg.benchmarks_overlay_path = j.value("benchmarks_overlay", std::string());

    if (j.contains("rake")) {
      const auto& r = j["rake"];
      cfg.rake.tolerance = r.value("tolerance", cfg.rake.tolerance);
      cfg.rake.max_iterations = r.value("max_iterations", cfg.rake.max_iterations);
      cfg.rake.min_cell_count = r.value("min_cell_count", cfg.rake.min_cell_count);
      if (r.contains("weight_cap") && !r["weight_cap"].is_null())
        cfg.rake.weight_cap = r["weight_cap"].get<double>();
    }

    if (j.contains("scoreboard")) {
      cfg.has_scoreboard = true;
      const auto& s = j["scoreboard"];
      for (const auto& b : s.at("benchmarks")) cfg.scoreboard.benchmarks.push_back(b.get<std::string>());
      cfg.scoreboard.likely_voters = s.value("likely_voters", false);
      if (s.contains("grouping") && s["grouping"].is_array()) {
        std::vector<ApproachFilter> groups;
        for (const auto& g : s["grouping"])
          groups.push_back({g.at("name").get<std::string>(), filter_from_json(g.at("filter"))});
        cfg.scoreboard.grouping = std::move(groups);
      }
    }

    if (j.contains("sweep")) {
      cfg.has_sweep = true;
      const auto& s = j["sweep"];
      cfg.sweep.draw_size = s.value("draw_size", cfg.sweep.draw_size);
      if (s.contains("increments")) cfg.sweep.increments = increments_from_json(s["increments"]);
      cfg.sweep.replicates = s.value("replicates", cfg.sweep.replicates);
      if (s.contains("estimator")) {
        const auto& e = s["estimator"];
        cfg.sweep.estimator.id = e.at("id").get<std::string>();
        if (e.contains("params"))
          for (auto& [k, v] : e["params"].items()) cfg.sweep.estimator.params[k] = v.get<double>();
      }
      cfg.sweep_benchmark = s.value("benchmark", std::string());
    }

    if (j.contains("synthetic")) {
      cfg.has_synth = true;
      const auto& s = j["synthetic"];
      cfg.synth.population_size = s.value("population_size", cfg.synth.population_size);
      cfg.synth.seed = cfg.seed;
      if (s.contains("demographics")) cfg.synth.demographics = margins_from_json(s["demographics"]);
      if (s.contains("outcomes")) {
        const auto& o = s["outcomes"];
        if (o.contains("two_party_rep")) cfg.synth.p_rep_two_party = outcome_from_json(o["two_party_rep"]);
        if (o.contains("non_two_party_share"))
          cfg.synth.p_non_two_party = o["non_two_party_share"].get<double>();
        if (o.contains("births_rate")) cfg.synth.births_rate = outcome_from_json(o["births_rate"]);
        if (o.contains("internet_paid")) cfg.synth.p_internet_paid = outcome_from_json(o["internet_paid"]);
        if (o.contains("internet_unpaid"))
          cfg.synth.p_internet_unpaid = outcome_from_json(o["internet_unpaid"]);
      }
      cfg.synth_emit_population = s.value("emit_population", false);
      if (s.contains("frames")) {
        for (const auto& fj : s["frames"]) {
          FrameSpec frame;
          frame.kind.source_label = fj.at("label").get<std::string>();
          const std::string cat = fj.at("category").get<std::string>();
          if (cat == "probability") frame.kind.category = FrameCategory::probability;
          else if (cat == "nonprobability") frame.kind.category = FrameCategory::nonprobability;
          else if (cat == "registered_voter") frame.kind.category = FrameCategory::registered_voter;
          else raise(ErrorCode::config_parse, "unknown frame category '" + cat + "'");
          frame.kind.national = fj.value("national", true);
          frame.mode = fj.value("mode", std::string("web")) == "phone" ? Mode::phone : Mode::web;
          frame.sample_size = fj.at("size").get<std::size_t>();
          if (fj.contains("bias")) {
            const auto& b = fj["bias"];
            if (b.contains("demographic"))
              for (const auto& m : b["demographic"])
                frame.bias.demographic.push_back({m.at("dimension").get<std::string>(),
                                                  m.at("category").get<std::string>(),
                                                  m.at("factor").get<double>()});
            if (b.contains("by_vote"))
              for (auto& [k, v] : b["by_vote"].items()) frame.bias.by_vote[k] = v.get<double>();
            if (b.contains("by_internet"))
              for (auto& [k, v] : b["by_internet"].items())
                frame.bias.by_internet[k] = v.get<double>();
          }
          cfg.synth_frames.push_back(std::move(frame));
        }
      }
    }
  } catch (const json::exception& e) {
    raise(ErrorCode::config_parse, path + ": " + e.what());
  }
  return cfg;
}

void apply_overrides(RunConfig& config, std::optional<std::uint64_t> seed,
                     const std::optional<std::string>& output_dir, std::optional<int> jobs) {
  if (seed) {
    config.seed = *seed;
    config.sweep.seed = *seed;
    config.synth.seed = *seed;
  }
  if (output_dir) config.output_dir = *output_dir;
  if (jobs) config.sweep.jobs = *jobs;
}

BenchmarkRegistry load_benchmarks(const RunConfig& config) {
  BenchmarkRegistry reg = builtin_benchmarks();
  if (!config.benchmarks_overlay_path.empty())
    reg.apply_overlay_file(config.benchmarks_overlay_path);
  return reg;
}

namespace {

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) raise(ErrorCode::bad_argument, "run config does not set " + what);
  if (!std::filesystem::exists(path))
    raise(ErrorCode::missing_file, what + " '" + path + "' does not exist");
}

void write_metadata(std::ostream& os, const RunConfig& config, const std::string& extra = "") {
  os << "# tool = svbench " << kVersion << "\n";
  os << "# config = " << config.config_path << " digest " << config.config_digest << "\n";
  os << "# seed = " << config.seed << "\n";
  os << "# rake = ipf(tolerance=" << format_double(config.rake.tolerance)
     << ",max_iterations=" << config.rake.max_iterations
     << ",min_cell_count=" << config.rake.min_cell_count << ",weight_cap="
     << (config.rake.weight_cap ? format_double(*config.rake.weight_cap) : std::string("off"))
     << ")\n";
  os << "# ci = normal_approx_1.96_kish_effective_n\n";
  if (!extra.empty()) os << extra;
}

std::ofstream open_output(const RunConfig& config, const std::string& name, std::string& path_out) {
  std::filesystem::create_directories(config.output_dir);
  path_out = (std::filesystem::path(config.output_dir) / name).string();
  std::ofstream out(path_out, std::ios::binary);
  if (!out) raise(ErrorCode::missing_file, "cannot write " + path_out);
  return out;
}

// The targets for a benchmark's scope, plus the dataset slice and margin
// design it should be estimated on.
struct ScopedAnalysis {
  SurveyDataset data;
  const MarginSpec* margins = nullptr;
  MarginTargets targets;
};

ScopedAnalysis scope_analysis(const SurveyDataset& dataset, const TargetsFile& targets,
                              const std::string& scope) {
  ScopedAnalysis out;
  if (scope == "national" || scope.empty()) {
    out.data = dataset;
    out.margins = &MarginSpec::national();
    out.targets = targets.national;
    return out;
  }
  auto it = targets.states.find(scope);
  if (it == targets.states.end())
    raise(ErrorCode::bad_argument, "no state margin targets for scope '" + scope + "'");
  FilterSpec f;
  f.state = scope;
  out.data = dataset.filter(f);
  out.margins = &MarginSpec::state();
  out.targets = it->second;
  return out;
}

}  // namespace

ValidateResult cmd_validate(const RunConfig& config) {
  require_file(config.schema_path, "schema");
  require_file(config.dataset_path, "dataset");
  if (!config.margin_targets_path.empty()) require_file(config.margin_targets_path, "margin_targets");
  if (!config.benchmarks_overlay_path.empty())
    require_file(config.benchmarks_overlay_path, "benchmarks_overlay");

  SchemaConfig schema = SchemaConfig::load(config.schema_path);
  LoadReport report = load_survey_report(config.dataset_path, schema);

  ValidateResult result;
  result.rows = report.rows_seen;
  if (report.issues.empty()) {
    result.ok = true;
    result.report = "OK, " + std::to_string(report.rows_seen) + " rows";
    return result;
  }
  std::ostringstream os;
  for (const auto& issue : report.issues) {
    os << "row " << issue.row;
    if (!issue.column.empty()) os << " column '" << issue.column << "'";
    os << ": " << issue.message << "\n";
  }
  os << report.issues.size() << " issue(s) in " << report.rows_seen << " rows";
  result.report = os.str();
  return result;
}

std::vector<std::string> cmd_scoreboard(const RunConfig& config) {
  require_file(config.schema_path, "schema");
  require_file(config.dataset_path, "dataset");
  require_file(config.margin_targets_path, "margin_targets");
  if (!config.has_scoreboard) raise(ErrorCode::bad_argument, "run config has no scoreboard section");

  SchemaConfig schema = SchemaConfig::load(config.schema_path);
  SurveyDataset dataset = load_survey(config.dataset_path, schema);
  TargetsFile targets = load_margin_targets(config.margin_targets_path);
  BenchmarkRegistry registry = load_benchmarks(config);

  std::vector<std::string> written;
  for (const auto& name : config.scoreboard.benchmarks) {
    const BenchmarkSpec& benchmark = registry.lookup(name);
    ScopedAnalysis scoped = scope_analysis(dataset, targets, benchmark.scope);
    SurveyDataset analysis_data =
        config.scoreboard.likely_voters ? scoped.data.filter(likely_voters()) : scoped.data;
    std::vector<ApproachFilter> grouping = config.scoreboard.grouping
                                               ? *config.scoreboard.grouping
                                               : default_grouping(analysis_data);
    auto rows =
        scoreboard(analysis_data, *scoped.margins, scoped.targets, benchmark, grouping, config.rake);

    std::string path;
    std::ofstream out = open_output(config, "scoreboard_" + name + ".csv", path);
    std::ostringstream extra;
    extra << "# benchmark = " << name << " truth=" << format_double(benchmark.truth) << " units="
          << to_string(benchmark.units) << " scope=" << benchmark.scope << "\n";
    extra << "# likely_voters = " << (config.scoreboard.likely_voters ? "true" : "false") << "\n";
    write_metadata(out, config, extra.str());
    write_delimited_row(out,
                        {"approach", "weighted", "point", "ci_low", "ci_high", "truth", "abs_error",
                         "covered", "n", "effective_n", "status"},
                        ',');
    for (const auto& row : rows) {
      std::vector<std::string> cells(11);
      cells[0] = row.approach;
      cells[1] = row.weighted ? "true" : "false";
      if (row.estimate) {
        cells[2] = format_double(row.estimate->point);
        cells[3] = format_double(row.estimate->ci_low);
        cells[4] = format_double(row.estimate->ci_high);
        cells[9] = format_double(row.estimate->effective_n);
      }
      cells[5] = format_double(benchmark.truth);
      if (row.result) {
        cells[6] = format_double(row.result->abs_error);
        cells[7] = row.result->covered ? "true" : "false";
      }
      cells[8] = std::to_string(row.n);
      cells[10] = row.status;
      write_delimited_row(out, cells, ',');
    }
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> cmd_sweep(const RunConfig& config) {
  require_file(config.schema_path, "schema");
  require_file(config.dataset_path, "dataset");
  require_file(config.margin_targets_path, "margin_targets");
  if (!config.has_sweep) raise(ErrorCode::bad_argument, "run config has no sweep section");

  SchemaConfig schema = SchemaConfig::load(config.schema_path);
  SurveyDataset dataset = load_survey(config.dataset_path, schema);
  TargetsFile targets = load_margin_targets(config.margin_targets_path);

  SweepConfig sweep_config = config.sweep;
  sweep_config.seed = config.seed;
  SweepResult result =
      run_sweep(dataset, MarginSpec::national(), targets.national, config.rake, sweep_config);

  std::string benchmark_note;
  if (!config.sweep_benchmark.empty()) {
    BenchmarkRegistry registry = load_benchmarks(config);
    const BenchmarkSpec& b = registry.lookup(config.sweep_benchmark);
    benchmark_note = "# benchmark = " + b.name + " truth=" + format_double(b.truth) + " units=" +
                     std::string(to_string(b.units)) + "\n";
  }

  std::string path;
  std::ofstream out = open_output(config, "sweep_" + sweep_config.estimator.id + ".csv", path);
  std::ostringstream extra;
  extra << "# sweep = draw_size=" << sweep_config.draw_size
        << " replicates=" << sweep_config.replicates
        << " estimator=" << sweep_config.estimator.id << "\n";
  extra << "# sweep_assumptions = rerake_each_draw=true within_draw_replacement=false "
           "interval=percentile_order_statistics\n";
  extra << "# pools = probability=" << result.prob_pool_size
        << " nonprobability=" << result.nonprob_pool_size
        << " draws=" << result.draws_executed << "\n";
  extra << benchmark_note;
  write_metadata(out, config, extra.str());
  write_delimited_row(out, {"fraction", "mean", "p2_5", "p97_5", "failures", "k_prob", "used",
                            "unreliable"},
                      ',');
  for (const auto& inc : result.increments) {
    write_delimited_row(out,
                        {format_double(inc.fraction), format_double(inc.mean),
                         format_double(inc.p2_5), format_double(inc.p97_5),
                         std::to_string(inc.failures), std::to_string(inc.k_prob),
                         std::to_string(inc.used), inc.unreliable ? "true" : "false"},
                        ',');
  }
  return {path};
}

std::vector<std::string> cmd_synth(const RunConfig& config) {
  if (!config.has_synth) raise(ErrorCode::bad_argument, "run config has no synthetic section");
  if (config.synth_frames.empty())
    raise(ErrorCode::bad_argument, "synthetic section declares no frames");

  Population population = generate_population(config.synth);
  SurveyDataset survey = sample_frames(population, config.synth_frames, config.seed);

  std::vector<std::string> written;
  std::filesystem::create_directories(config.output_dir);
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.output_dir) / name).string();
  };

  // Survey in the canonical ingestion format, with a schema that reloads it.
  {
    std::string path;
    std::ofstream out = open_output(config, "synthetic_survey.csv", path);
    write_canonical(survey, out);
    written.push_back(path);
  }
  {
    const std::string path = out_path("synthetic_schema.json");
    canonical_schema_for(survey).save(path);
    written.push_back(path);
  }
  {
    const std::string path = out_path("synthetic_targets.json");
    write_margin_targets(targets_from_truths(population.truths), path);
    written.push_back(path);
  }
  {
    const std::string path = out_path("synthetic_truths.json");
    write_truths(population.truths, path);
    written.push_back(path);
  }
  {
    const std::string path = out_path("synthetic_benchmarks.json");
    write_truth_benchmarks(population.truths, path);
    written.push_back(path);
  }
  if (config.synth_emit_population) {
    std::vector<RespondentRecord> rows;
    rows.reserve(population.people.size());
    std::vector<FrameKind> frames{{"population", FrameCategory::probability, true}};
    for (const auto& p : population.people) {
      RespondentRecord r = p.record;
      r.frame = 0;
      rows.push_back(std::move(r));
    }
    SurveyDataset pop_ds(std::move(rows), std::move(frames),
                         {"synthetic_population", "", population.people.size()});
    std::string path;
    std::ofstream out = open_output(config, "synthetic_population.csv", path);
    write_canonical(pop_ds, out);
    written.push_back(path);
  }
  return written;
}

}  // namespace svbench
