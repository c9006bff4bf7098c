// svbench CLI. Everything goes through the C API in svbench.h; this file is
// argument plumbing only.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "svbench.h"

namespace {

// 0 ok, 2 config, 3 ingestion, 4 computation (also used for C-boundary
// misuse, which cannot happen from here).
int exit_code_for(svb_status status) {
  switch (status) {
    case SVB_OK: return 0;
    case SVB_ERR_CONFIG: return 2;
    case SVB_ERR_INGEST: return 3;
    case SVB_ERR_COMPUTE: return 4;
    case SVB_ERR_INVALID: return 4;
  }
  return 4;
}

struct CommonOpts {
  std::string config;
  std::string seed;
  std::string out_dir;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_jobs) {
  cmd->add_option("--config", opts.config, "run config file (JSON)")->required();
  cmd->add_option("--seed", opts.seed, "override the config seed");
  cmd->add_option("--out", opts.out_dir, "override the output directory");
  if (with_jobs) cmd->add_option("--jobs", opts.jobs, "worker threads for sweep execution");
}

const char* c_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int report_outputs(svb_status status, char* outputs) {
  if (status != SVB_OK) {
    std::fprintf(stderr, "error: %s\n", svb_last_error());
  } else if (outputs && *outputs) {
    std::printf("%s\n", outputs);
  }
  svb_string_free(outputs);
  return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"survey benchmarking toolkit"};
  app.set_version_flag("--version", std::string("svbench ") + svb_version());
  app.require_subcommand(1);

  CommonOpts validate_opts, scoreboard_opts, sweep_opts, synth_opts;

  CLI::App* validate = app.add_subcommand("validate", "check a dataset against its schema");
  add_common(validate, validate_opts, false);

  CLI::App* scoreboard =
      app.add_subcommand("scoreboard", "score approaches against benchmarks, one file per benchmark");
  add_common(scoreboard, scoreboard_opts, false);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Monte Carlo probability/nonprobability composition sweep");
  add_common(sweep, sweep_opts, true);

  CLI::App* synth =
      app.add_subcommand("synth", "generate a synthetic population, frames and truth files");
  add_common(synth, synth_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are config errors
  }

  if (validate->parsed()) {
    char* report = nullptr;
    size_t rows = 0;
    svb_status status = svb_run_validate(validate_opts.config.c_str(), &report, &rows);
    if (report && *report) std::printf("%s\n", report);
    if (status != SVB_OK && !(report && *report))
      std::fprintf(stderr, "error: %s\n", svb_last_error());
    svb_string_free(report);
    return exit_code_for(status);
  }
  if (scoreboard->parsed()) {
    char* outputs = nullptr;
    svb_status status =
        svb_run_scoreboard(scoreboard_opts.config.c_str(), c_or_null(scoreboard_opts.out_dir),
                           c_or_null(scoreboard_opts.seed), scoreboard_opts.jobs, &outputs);
    return report_outputs(status, outputs);
  }
  if (sweep->parsed()) {
    char* outputs = nullptr;
    svb_status status = svb_run_sweep(sweep_opts.config.c_str(), c_or_null(sweep_opts.out_dir),
                                      c_or_null(sweep_opts.seed), sweep_opts.jobs, &outputs);
    return report_outputs(status, outputs);
  }
  if (synth->parsed()) {
    char* outputs = nullptr;
    svb_status status = svb_run_synth(synth_opts.config.c_str(), c_or_null(synth_opts.out_dir),
                                      c_or_null(synth_opts.seed), &outputs);
    return report_outputs(status, outputs);
  }
  return 2;
}
