/*
 * Copyright 2026 The paraeval Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * paraeval C API.
 *
 * Paragraph-level MT evaluation datasets built from sentence-level human
 * ratings, BLEU scoring of paragraphs, and metric meta-evaluation.
 *
 * Conventions:
 *  - Every function returns a paraeval_status. On failure the message is
 *    available from paraeval_last_error() on the same thread until the next
 *    failing call on that thread.
 *  - Objects are opaque handles created by the library and released with
 *    the matching *_free function. Passing NULL to *_free is a no-op.
 *  - Handles are immutable after creation, except paraeval_paragraphs_append
 *    on its destination, and may be shared between threads for reading.
 *  - Strings are UTF-8 and NUL-terminated. Strings returned by the library
 *    stay valid as long as the handle they came from.
 *  - Output files are written atomically (temporary file and rename).
 *  - Input paths may be plain or gzip-compressed.
 */

#ifndef PARAEVAL_PARAEVAL_H_
#define PARAEVAL_PARAEVAL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PARAEVAL_BUILDING_LIBRARY)
#define PARAEVAL_API __declspec(dllexport)
#else
#define PARAEVAL_API __declspec(dllimport)
#endif
#else
#define PARAEVAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum paraeval_status {
  PARAEVAL_OK = 0,
  /* Invalid argument: bad k, empty list, out-of-range option. */
  PARAEVAL_ERROR_ARGUMENT = 1,
  /* Input data is malformed or violates an invariant. */
  PARAEVAL_ERROR_DATA = 2,
  /* A file could not be read or written. */
  PARAEVAL_ERROR_IO = 3,
  /* The operation does not apply to this input. */
  PARAEVAL_ERROR_UNSUPPORTED = 4,
  PARAEVAL_ERROR_INTERNAL = 5
} paraeval_status;

typedef struct paraeval_ratings paraeval_ratings;
typedef struct paraeval_validation paraeval_validation;
typedef struct paraeval_paragraphs paraeval_paragraphs;
typedef struct paraeval_scores paraeval_scores;
typedef struct paraeval_report paraeval_report;

PARAEVAL_API const char* paraeval_version(void);
PARAEVAL_API const char* paraeval_last_error(void);
PARAEVAL_API const char* paraeval_status_name(paraeval_status status);

/* ---- Ratings ------------------------------------------------------------ */

/* Parses and validates a ratings file (one JSON object per line). Any
 * validation error fails the call with PARAEVAL_ERROR_DATA. */
PARAEVAL_API paraeval_status paraeval_ratings_read(const char* path,
                                                   paraeval_ratings** out);
PARAEVAL_API paraeval_status paraeval_ratings_parse(const char* data,
                                                    size_t size,
                                                    paraeval_ratings** out);
PARAEVAL_API size_t paraeval_ratings_size(const paraeval_ratings* ratings);
PARAEVAL_API void paraeval_ratings_free(paraeval_ratings* ratings);

/* Parses a ratings file and reports validation problems instead of failing
 * on them. Malformed lines still fail. */
PARAEVAL_API paraeval_status paraeval_validate_file(
    const char* path, paraeval_validation** out);
PARAEVAL_API size_t paraeval_validation_records(
    const paraeval_validation* validation);
PARAEVAL_API size_t paraeval_validation_error_count(
    const paraeval_validation* validation);
PARAEVAL_API const char* paraeval_validation_error(
    const paraeval_validation* validation, size_t index);
PARAEVAL_API size_t paraeval_validation_warning_count(
    const paraeval_validation* validation);
PARAEVAL_API const char* paraeval_validation_warning(
    const paraeval_validation* validation, size_t index);
PARAEVAL_API void paraeval_validation_free(paraeval_validation* validation);

/* ---- Paragraphs --------------------------------------------------------- */

/* Sliding-window paragraphs of k sentences. */
PARAEVAL_API paraeval_status paraeval_paragraphs_build(
    const paraeval_ratings* ratings, int k, paraeval_paragraphs** out);
/* Builds paragraphs for each of ks[0..n_ks). out[i] receives the paragraphs
 * for ks[i]; on failure nothing is stored. */
PARAEVAL_API paraeval_status paraeval_paragraphs_build_many(
    const paraeval_ratings* ratings, const int* ks, size_t n_ks, int threads,
    paraeval_paragraphs** out);
PARAEVAL_API paraeval_status paraeval_paragraphs_read(
    const char* path, paraeval_paragraphs** out);
PARAEVAL_API paraeval_status paraeval_paragraphs_write(
    const paraeval_paragraphs* paragraphs, const char* path);
/* An empty collection to append into. */
PARAEVAL_API paraeval_status paraeval_paragraphs_new(paraeval_paragraphs** out);
PARAEVAL_API paraeval_status paraeval_paragraphs_append(
    paraeval_paragraphs* dst, const paraeval_paragraphs* src);
PARAEVAL_API size_t paraeval_paragraphs_size(
    const paraeval_paragraphs* paragraphs);
PARAEVAL_API void paraeval_paragraphs_free(paraeval_paragraphs* paragraphs);

/* ---- Training export ---------------------------------------------------- */

PARAEVAL_API paraeval_status paraeval_sample_uniform(
    const paraeval_paragraphs* pool, size_t n, uint64_t seed,
    paraeval_paragraphs** out);
PARAEVAL_API paraeval_status paraeval_sample_stratified(
    const paraeval_paragraphs* pool, size_t n, const int* ks, size_t n_ks,
    uint64_t seed, paraeval_paragraphs** out);

/* ---- Metric scores ------------------------------------------------------ */

/* Reads a tab-separated scores file:
 *   metric  lang_pair  system  doc_id  start_index  k  score
 */
PARAEVAL_API paraeval_status paraeval_scores_read(const char* path,
                                                  paraeval_scores** out);
PARAEVAL_API paraeval_status paraeval_scores_write(
    const paraeval_scores* scores, const char* path);
/* Scores paragraphs with a built-in metric ("bleu") in mode "direct" or
 * "aligned". */
PARAEVAL_API paraeval_status paraeval_scores_compute(
    const paraeval_paragraphs* paragraphs, const char* metric,
    const char* mode, paraeval_scores** out);
PARAEVAL_API paraeval_status paraeval_scores_new(paraeval_scores** out);
PARAEVAL_API paraeval_status paraeval_scores_append(
    paraeval_scores* dst, const paraeval_scores* src);
/* Number of (metric, lang_pair, k) tables and of scored entries. */
PARAEVAL_API size_t paraeval_scores_table_count(const paraeval_scores* scores);
PARAEVAL_API size_t paraeval_scores_entry_count(const paraeval_scores* scores);
PARAEVAL_API void paraeval_scores_free(paraeval_scores* scores);

/* ---- Reports ------------------------------------------------------------ */

typedef struct paraeval_report_row {
  const char* dataset;
  const char* lang_pair;
  int k;
  const char* metric;
  const char* mode;
  const char* statistic;
  double value;
  int has_epsilon;
  double epsilon;
} paraeval_report_row;

typedef struct paraeval_metaeval_options {
  int system_level;
  int segment_level;
  int tau_optimize;
  int pearson;
  int ties;
  /* Fraction of items per unit used to calibrate epsilon; 0 calibrates on
   * the reported items themselves. */
  double calibration_fraction;
  uint64_t calibration_seed;
  int threads;
} paraeval_metaeval_options;

/* System and segment level on, everything else off, one thread. */
PARAEVAL_API void paraeval_metaeval_options_init(
    paraeval_metaeval_options* options);

PARAEVAL_API paraeval_status paraeval_metaeval(
    const paraeval_paragraphs* paragraphs, const paraeval_scores* scores,
    const paraeval_metaeval_options* options, paraeval_report** out);

/* scores may be NULL for human tie rates only. */
PARAEVAL_API paraeval_status paraeval_tie_report(
    const paraeval_paragraphs* paragraphs, const paraeval_scores* scores,
    int threads, paraeval_report** out);

PARAEVAL_API paraeval_status paraeval_compare_modes(
    const paraeval_paragraphs* paragraphs, const paraeval_scores* direct,
    const paraeval_scores* aligned, int threads, paraeval_report** out);

typedef struct paraeval_stats_options {
  int lengths;
  const double* percentiles;
  size_t n_percentiles;
  int truncation;
  int64_t budget;
  /* "whitespace" or "char". */
  const char* counter;
  int threads;
} paraeval_stats_options;

/* Lengths at the 25/50/75th percentiles, no truncation, budget 1024,
 * whitespace counter, one thread. */
PARAEVAL_API void paraeval_stats_options_init(paraeval_stats_options* options);

PARAEVAL_API paraeval_status paraeval_stats(
    const paraeval_paragraphs* paragraphs,
    const paraeval_stats_options* options, paraeval_report** out);

/* paragraph_count per evaluation unit. */
PARAEVAL_API paraeval_status paraeval_paragraph_counts(
    const paraeval_paragraphs* paragraphs, paraeval_report** out);

typedef struct paraeval_sim_config {
  int n_items;
  int n_systems;
  int max_k;
  double sigma_quality;
  double sigma_human;
  double sigma_metric;
  double system_mean_spread;
  uint64_t seed;
} paraeval_sim_config;

PARAEVAL_API void paraeval_sim_config_init(paraeval_sim_config* config);
/* Reads a flat "key = value" file with the paraeval_sim_config field names. */
PARAEVAL_API paraeval_status paraeval_sim_config_read(
    const char* path, paraeval_sim_config* config);
PARAEVAL_API paraeval_status paraeval_simulate(
    const paraeval_sim_config* config, const int* ks, size_t n_ks,
    int n_seeds, int threads, paraeval_report** out);

PARAEVAL_API size_t paraeval_report_size(const paraeval_report* report);
PARAEVAL_API paraeval_status paraeval_report_row_at(
    const paraeval_report* report, size_t index, paraeval_report_row* row);
PARAEVAL_API size_t paraeval_report_warning_count(
    const paraeval_report* report);
PARAEVAL_API const char* paraeval_report_warning(const paraeval_report* report,
                                                 size_t index);
/* Writes `<prefix>.tsv` and `<prefix>.jsonl`. */
PARAEVAL_API paraeval_status paraeval_report_write(
    const paraeval_report* report, const char* prefix);
/* The TSV rendering, valid as long as the report. */
PARAEVAL_API const char* paraeval_report_tsv(const paraeval_report* report);
PARAEVAL_API void paraeval_report_free(paraeval_report* report);

/* ---- Utilities ---------------------------------------------------------- */

/* Parses "1-10", "1..10" or "1,2,5". On success writes up to `capacity`
 * values to ks and the total count to *count. */
PARAEVAL_API paraeval_status paraeval_parse_k_list(const char* text, int* ks,
                                                   size_t capacity,
                                                   size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PARAEVAL_PARAEVAL_H_ */
