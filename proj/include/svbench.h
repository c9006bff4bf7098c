#ifndef SVBENCH_H
#define SVBENCH_H

/* Survey benchmarking toolkit: C API.
 *
 * Opaque handles wrap the C++ core so the library can be driven from C,
 * Python/ctypes, R, or the bundled CLI. Functions return svb_status; on any
 * failure svb_last_error() carries a thread-local message.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svb_status {
  SVB_OK = 0,
  SVB_ERR_CONFIG = 1,  /* bad config, missing files, unknown names      */
  SVB_ERR_INGEST = 2,  /* data file does not parse or violates schema   */
  SVB_ERR_COMPUTE = 3, /* raking/estimation refusals, pool shortfalls   */
  SVB_ERR_INVALID = 4  /* null handles, bad arguments at the C boundary */
} svb_status;

typedef struct svb_dataset svb_dataset;
typedef struct svb_weights svb_weights;

const char* svb_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* svb_last_error(void);

void svb_string_free(char* s);

/* ---- datasets ---- */

svb_status svb_dataset_load(const char* data_path, const char* schema_path, svb_dataset** out);
void svb_dataset_free(svb_dataset* dataset);
svb_status svb_dataset_row_count(const svb_dataset* dataset, size_t* out);

/* filter_json example: {"frame_category":"probability","national":true}
 * Keys: state, frame_category, source_label, national, general_population,
 * mode, births_eligible, likely_voter. NULL or "" counts everything. */
svb_status svb_dataset_count(const svb_dataset* dataset, const char* filter_json, size_t* out);

/* ---- raking ---- */

/* scope: "national" or a 2-letter state code present in the targets file. */
svb_status svb_rake(const svb_dataset* dataset, const char* filter_json,
                    const char* targets_path, const char* scope, svb_weights** out);
void svb_weights_free(svb_weights* weights);
svb_status svb_weights_size(const svb_weights* weights, size_t* out);
svb_status svb_weights_copy(const svb_weights* weights, double* dst, size_t capacity);
svb_status svb_weights_converged(const svb_weights* weights, int* out);
svb_status svb_weights_design_effect(const svb_weights* weights, double* out);

/* ---- estimation ---- */

typedef struct svb_estimate {
  double point;
  double ci_low;
  double ci_high;
  double effective_n;
  unsigned long long n_used;
} svb_estimate;

/* estimator_id: two_party_share | births_total | internet_paid |
 * internet_unpaid | internet_none. params_json e.g.
 * {"population_count": 1000000} (required for births_total). weights may be
 * NULL for an unweighted estimate; otherwise it must come from svb_rake on
 * the same filtered view. */
svb_status svb_estimate_run(const svb_dataset* dataset, const char* filter_json,
                            const svb_weights* weights, const char* estimator_id,
                            const char* params_json, svb_estimate* out);

/* ---- whole runs (what the CLI calls) ---- */

/* report receives a malloc'd summary (free with svb_string_free). rows may
 * be NULL. Returns SVB_ERR_INGEST when the file has row-level issues. */
svb_status svb_run_validate(const char* config_path, char** report, size_t* rows);

/* seed_override/out_dir may be NULL, jobs <= 0 means the config value.
 * outputs, when non-NULL, receives a malloc'd newline-joined list of the
 * files written. */
svb_status svb_run_scoreboard(const char* config_path, const char* out_dir,
                              const char* seed_override, int jobs, char** outputs);
svb_status svb_run_sweep(const char* config_path, const char* out_dir, const char* seed_override,
                         int jobs, char** outputs);
svb_status svb_run_synth(const char* config_path, const char* out_dir, const char* seed_override,
                         char** outputs);

#ifdef __cplusplus
}
#endif

#endif /* SVBENCH_H */
