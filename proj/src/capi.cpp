#include "svbench.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "run.hpp"
#include "version.hpp"

using namespace svbench;

struct svb_dataset {
  SurveyDataset data;
};

struct svb_weights {
  WeightVector weights;
  WeightDiagnostics diagnostics;
};

namespace {

thread_local std::string g_last_error = "no error";

svb_status to_status(const Error& e) {
  switch (e.family()) {
    case ErrorFamily::config: return SVB_ERR_CONFIG;
    case ErrorFamily::ingest: return SVB_ERR_INGEST;
    case ErrorFamily::compute: return SVB_ERR_COMPUTE;
  }
  return SVB_ERR_INVALID;
}

template <typename Fn>
svb_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SVB_ERR_INVALID;
  }
}

svb_status invalid(const char* message) {
  g_last_error = message;
  return SVB_ERR_INVALID;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

FilterSpec filter_or_all(const char* filter_json) {
  if (!filter_json || !*filter_json) return {};
  return parse_filter_json(filter_json);
}

std::optional<std::uint64_t> parse_seed(const char* seed) {
  if (!seed || !*seed) return std::nullopt;
  std::uint64_t value = 0;
  auto [p, ec] = std::from_chars(seed, seed + std::strlen(seed), value);
  if (ec != std::errc() || *p != '\0')
    raise(ErrorCode::bad_argument, std::string("seed '") + seed + "' is not an integer");
  return value;
}

RunConfig load_with_overrides(const char* config_path, const char* out_dir,
                              const char* seed_override, int jobs) {
  if (!config_path) raise(ErrorCode::bad_argument, "config path is null");
  RunConfig cfg = load_run_config(config_path);
  apply_overrides(cfg, parse_seed(seed_override),
                  out_dir && *out_dir ? std::optional<std::string>(out_dir) : std::nullopt,
                  jobs > 0 ? std::optional<int>(jobs) : std::nullopt);
  return cfg;
}

void export_outputs(const std::vector<std::string>& written, char** outputs) {
  if (!outputs) return;
  std::string joined;
  for (const auto& path : written) {
    if (!joined.empty()) joined += '\n';
    joined += path;
  }
  *outputs = dup_string(joined);
}

}  // namespace

extern "C" {

const char* svb_version(void) { return kVersion; }

const char* svb_last_error(void) { return g_last_error.c_str(); }

void svb_string_free(char* s) { std::free(s); }

svb_status svb_dataset_load(const char* data_path, const char* schema_path, svb_dataset** out) {
  if (!data_path || !schema_path || !out) return invalid("svb_dataset_load: null argument");
  return guarded([&] {
    SchemaConfig schema = SchemaConfig::load(schema_path);
    auto handle = std::make_unique<svb_dataset>();
    handle->data = load_survey(data_path, schema);
    *out = handle.release();
    return SVB_OK;
  });
}

void svb_dataset_free(svb_dataset* dataset) { delete dataset; }

svb_status svb_dataset_row_count(const svb_dataset* dataset, size_t* out) {
  if (!dataset || !out) return invalid("svb_dataset_row_count: null argument");
  *out = dataset->data.size();
  return SVB_OK;
}

svb_status svb_dataset_count(const svb_dataset* dataset, const char* filter_json, size_t* out) {
  if (!dataset || !out) return invalid("svb_dataset_count: null argument");
  return guarded([&] {
    *out = dataset->data.count_matching(filter_or_all(filter_json));
    return SVB_OK;
  });
}

svb_status svb_rake(const svb_dataset* dataset, const char* filter_json, const char* targets_path,
                    const char* scope, svb_weights** out) {
  if (!dataset || !targets_path || !out) return invalid("svb_rake: null argument");
  return guarded([&] {
    TargetsFile targets = load_margin_targets(targets_path);
    const std::string scope_name = scope && *scope ? scope : "national";

    SurveyDataset view = dataset->data.filter(filter_or_all(filter_json));
    const MarginSpec* spec;
    const MarginTargets* margin_targets;
    if (scope_name == "national") {
      spec = &MarginSpec::national();
      margin_targets = &targets.national;
    } else {
      auto it = targets.states.find(scope_name);
      if (it == targets.states.end())
        raise(ErrorCode::bad_argument, "no state targets for scope '" + scope_name + "'");
      FilterSpec f;
      f.state = scope_name;
      view = view.filter(f);
      spec = &MarginSpec::state();
      margin_targets = &it->second;
    }

    auto handle = std::make_unique<svb_weights>();
    handle->weights = rake(assign_cells(view, *spec), *margin_targets);
    handle->diagnostics = diagnose(handle->weights);
    *out = handle.release();
    return SVB_OK;
  });
}

void svb_weights_free(svb_weights* weights) { delete weights; }

svb_status svb_weights_size(const svb_weights* weights, size_t* out) {
  if (!weights || !out) return invalid("svb_weights_size: null argument");
  *out = weights->weights.weights.size();
  return SVB_OK;
}

svb_status svb_weights_copy(const svb_weights* weights, double* dst, size_t capacity) {
  if (!weights || !dst) return invalid("svb_weights_copy: null argument");
  const auto& w = weights->weights.weights;
  if (capacity < w.size()) return invalid("svb_weights_copy: destination too small");
  std::memcpy(dst, w.data(), w.size() * sizeof(double));
  return SVB_OK;
}

svb_status svb_weights_converged(const svb_weights* weights, int* out) {
  if (!weights || !out) return invalid("svb_weights_converged: null argument");
  *out = weights->weights.converged ? 1 : 0;
  return SVB_OK;
}

svb_status svb_weights_design_effect(const svb_weights* weights, double* out) {
  if (!weights || !out) return invalid("svb_weights_design_effect: null argument");
  *out = weights->diagnostics.design_effect;
  return SVB_OK;
}

svb_status svb_estimate_run(const svb_dataset* dataset, const char* filter_json,
                            const svb_weights* weights, const char* estimator_id,
                            const char* params_json, svb_estimate* out) {
  if (!dataset || !estimator_id || !out) return invalid("svb_estimate_run: null argument");
  return guarded([&] {
    EstimatorRef ref;
    ref.id = estimator_id;
    if (params_json && *params_json) {
      try {
        auto j = nlohmann::json::parse(params_json);
        for (auto& [k, v] : j.items()) ref.params[k] = v.get<double>();
      } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::config_parse, std::string("params: ") + e.what());
      }
    }
    SurveyDataset view = dataset->data.filter(filter_or_all(filter_json));
    WeightSpan span;
    if (weights) span = weights->weights.weights;
    EstimateWithCI e = bind_estimator(ref).run(view, span);
    out->point = e.point;
    out->ci_low = e.ci_low;
    out->ci_high = e.ci_high;
    out->effective_n = e.effective_n;
    out->n_used = e.n_used;
    return SVB_OK;
  });
}

svb_status svb_run_validate(const char* config_path, char** report, size_t* rows) {
  if (!config_path) return invalid("svb_run_validate: null config path");
  return guarded([&] {
    RunConfig cfg = load_run_config(config_path);
    ValidateResult result = cmd_validate(cfg);
    if (report) *report = dup_string(result.report);
    if (rows) *rows = result.rows;
    if (!result.ok) {
      g_last_error = result.report;
      return SVB_ERR_INGEST;
    }
    return SVB_OK;
  });
}

svb_status svb_run_scoreboard(const char* config_path, const char* out_dir,
                              const char* seed_override, int jobs, char** outputs) {
  return guarded([&] {
    RunConfig cfg = load_with_overrides(config_path, out_dir, seed_override, jobs);
    export_outputs(cmd_scoreboard(cfg), outputs);
    return SVB_OK;
  });
}

svb_status svb_run_sweep(const char* config_path, const char* out_dir, const char* seed_override,
                         int jobs, char** outputs) {
  return guarded([&] {
    RunConfig cfg = load_with_overrides(config_path, out_dir, seed_override, jobs);
    export_outputs(cmd_sweep(cfg), outputs);
    return SVB_OK;
  });
}

svb_status svb_run_synth(const char* config_path, const char* out_dir, const char* seed_override,
                         char** outputs) {
  return guarded([&] {
    RunConfig cfg = load_with_overrides(config_path, out_dir, seed_override, 0);
    export_outputs(cmd_synth(cfg), outputs);
    return SVB_OK;
  });
}

}  // extern "C"
