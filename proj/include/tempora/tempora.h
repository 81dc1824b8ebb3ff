// Copyright 2026 The Tempora Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the tempora temporal-relation toolkit.
 *
 * Every fallible call returns a tempora_status; on failure a description is
 * available from tempora_last_error() on the same thread. Handles are
 * opaque and released with their matching *_free / *_close call.
 *
 * Bucket units are integers 0..6 (<=minutes, hours, days, weeks, months,
 * years, >=decades). Relations: 0 = before, 1 = after. Labels: 0 =
 * entailment, 1 = contradiction. */

#ifndef TEMPORA_TEMPORA_H_
#define TEMPORA_TEMPORA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TEMPORA_BUILDING_LIBRARY)
#define TEMPORA_API __declspec(dllexport)
#else
#define TEMPORA_API __declspec(dllimport)
#endif
#else
#define TEMPORA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tempora_status {
  TEMPORA_OK = 0,
  TEMPORA_ERR_ARGUMENT = 1,  /* bad argument or option */
  TEMPORA_ERR_IO = 2,        /* file could not be opened/written */
  TEMPORA_ERR_DATA = 3,      /* malformed input record */
  TEMPORA_ERR_PREDICTOR = 4, /* predictor transport or protocol failure */
  TEMPORA_ERR_DOMAIN = 5,    /* value outside the function's domain */
  TEMPORA_ERR_INTERNAL = 6
} tempora_status;

enum {
  TEMPORA_UNIT_COUNT = 7,
  TEMPORA_BEFORE = 0,
  TEMPORA_AFTER = 1,
  TEMPORA_ENTAILMENT = 0,
  TEMPORA_CONTRADICTION = 1,
  TEMPORA_GRADIENT_SIZE = 16
};

TEMPORA_API const char* tempora_version(void);
TEMPORA_API const char* tempora_status_string(tempora_status status);
/* Message of the last failed call on this thread ("" if none). Valid until
 * the next call into the library from this thread. */
TEMPORA_API const char* tempora_last_error(void);

/* Diagnostics (skipped records, warnings). The default sink writes to
 * stderr; pass NULL to restore it. */
typedef void (*tempora_log_fn)(void* user_data, const char* message);
TEMPORA_API void tempora_set_log_callback(tempora_log_fn fn, void* user_data);

/* ---- units ---------------------------------------------------------- */

TEMPORA_API tempora_status tempora_bucket_of_seconds(double seconds,
                                                     int* unit_out);
/* Static strings; NULL for an out-of-range unit. */
TEMPORA_API const char* tempora_unit_name(int unit);
TEMPORA_API const char* tempora_unit_token(int unit);
/* Unit index, or -1 when the token is not one of the seven unit tokens. */
TEMPORA_API int tempora_parse_unit_token(const char* token);

/* ---- symbolic engine ------------------------------------------------ */

/* int_max <= 0 selects the default (1000). Probability inputs are checked
 * and renormalized within 1e-6; a vector that is not a distribution gives
 * TEMPORA_ERR_DATA. */
TEMPORA_API tempora_status tempora_dist_value(const double p[2],
                                              const double d[7],
                                              double int_max, double* out);
TEMPORA_API tempora_status tempora_dur_value(const double v[7], double* out);
TEMPORA_API tempora_status tempora_infer_end_label(double dist, double dur,
                                                   int* relation_out);
/* gold is TEMPORA_BEFORE or TEMPORA_AFTER. The gradient is laid out as
 * p_before, p_after, d[0..6], v[0..6]. Inputs are taken as given (no
 * renormalization), matching finite differences. */
TEMPORA_API tempora_status tempora_end_loss(const double p[2],
                                            const double d[7],
                                            const double v[7], int gold,
                                            double int_max, double* loss_out);
TEMPORA_API tempora_status tempora_end_loss_grad(const double p[2],
                                                 const double d[7],
                                                 const double v[7], int gold,
                                                 double int_max,
                                                 double grad_out[16]);

/* ---- predictors ----------------------------------------------------- */

typedef struct tempora_predictor tempora_predictor;

/* spec: "baseline", "cmd:<shell command>" or "http://host:port/path". */
TEMPORA_API tempora_status tempora_predictor_open(const char* spec,
                                                  tempora_predictor** out);
TEMPORA_API void tempora_predictor_close(tempora_predictor* predictor);

TEMPORA_API tempora_status tempora_predictor_query_dist(
    tempora_predictor* predictor, const char* event_a, const char* event_b,
    const char* context, double p_out[2], double d_out[7]);
TEMPORA_API tempora_status tempora_predictor_query_dur(
    tempora_predictor* predictor, const char* event, double v_out[7]);

/* One dist and one dur round trip; latencies in milliseconds. */
TEMPORA_API tempora_status tempora_predictor_ping(tempora_predictor* predictor,
                                                  double* dist_ms_out,
                                                  double* dur_ms_out);

/* Label for one premise/hypothesis pair. */
TEMPORA_API tempora_status tempora_predict_hypothesis(
    tempora_predictor* predictor, const char* premise, const char* hypothesis,
    double int_max, int* label_out);

/* ---- file pipelines ------------------------------------------------- */
/* Outputs are written to a temporary file and renamed into place, so a
 * failed call leaves no partial output. In lenient mode (strict = 0) bad
 * records are logged and skipped; strict mode fails with TEMPORA_ERR_DATA
 * on the first one. */

typedef enum tempora_extract_mode {
  TEMPORA_EXTRACT_WITHIN = 0,
  TEMPORA_EXTRACT_CROSS = 1,
  TEMPORA_EXTRACT_BOTH = 2
} tempora_extract_mode;

typedef struct tempora_extract_options {
  const char* corpus_path;
  const char* out_path;
  tempora_extract_mode mode;
  int strict;
  /* Treat the input as plain text (one document) and annotate it with the
   * built-in rule-based annotator instead of reading a corpus. */
  int plain_text;
  unsigned workers; /* 0 behaves as 1 */
} tempora_extract_options;

typedef struct tempora_extract_stats {
  size_t documents;
  size_t record_errors;
  size_t within_pairs;
  size_t cross_pairs;
} tempora_extract_stats;

TEMPORA_API tempora_status tempora_extract_file(
    const tempora_extract_options* options, tempora_extract_stats* stats_out);

/* Annotates a plain-text file and writes it as a one-line corpus. */
TEMPORA_API tempora_status tempora_annotate_file(const char* text_path,
                                                 const char* doc_id,
                                                 const char* out_path);

typedef struct tempora_format_stats {
  size_t records;
  size_t record_errors;
  size_t negatives;
} tempora_format_stats;

/* Extracted pairs -> pre-training instances with seeded 50% negatives. */
TEMPORA_API tempora_status tempora_format_pretraining_file(
    const char* in_path, const char* out_path, uint64_t seed, int strict,
    tempora_format_stats* stats_out);
/* {"event","verb_index","unit"} records -> duration instances. */
TEMPORA_API tempora_status tempora_format_duration_file(
    const char* in_path, const char* out_path, int strict,
    tempora_format_stats* stats_out);

typedef struct tempora_predict_stats {
  size_t instances;
  size_t record_errors;
  size_t entailments;
} tempora_predict_stats;

TEMPORA_API tempora_status tempora_predict_file(tempora_predictor* predictor,
                                                const char* dataset_path,
                                                const char* out_path,
                                                double int_max, int strict,
                                                tempora_predict_stats* stats_out);

typedef struct tempora_split_stats {
  size_t train_stories;
  size_t test_stories;
  size_t train_instances;
  size_t test_instances;
  size_t record_errors;
} tempora_split_stats;

TEMPORA_API tempora_status tempora_split_file(const char* dataset_path,
                                              const char* train_path,
                                              const char* test_path,
                                              uint64_t seed, double ratio,
                                              int strict,
                                              tempora_split_stats* stats_out);

/* ---- evaluation ----------------------------------------------------- */

typedef struct tempora_report tempora_report;

typedef enum tempora_metric {
  TEMPORA_METRIC_START = 0,
  TEMPORA_METRIC_END = 1,
  TEMPORA_METRIC_ALL = 2,
  TEMPORA_METRIC_STORY_EM = 3
} tempora_metric;

/* difficulty: NULL for all instances, or "easy" / "hard". */
TEMPORA_API tempora_status tempora_evaluate_files(const char* predictions_path,
                                                  const char* gold_path,
                                                  const char* difficulty,
                                                  int strict,
                                                  tempora_report** out);
TEMPORA_API void tempora_report_free(tempora_report* report);

/* Returns 1 and stores the value when the metric is defined (non-empty
 * slice; story ids present), 0 otherwise. */
TEMPORA_API int tempora_report_metric(const tempora_report* report,
                                      tempora_metric metric, double* value_out);
/* Strings owned by the report. */
TEMPORA_API const char* tempora_report_json(const tempora_report* report);
TEMPORA_API const char* tempora_report_table(const tempora_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TEMPORA_TEMPORA_H_ */
