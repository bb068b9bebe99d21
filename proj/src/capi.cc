// Copyright 2026 The paraeval Authors.
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

#include <cmath>
#include <exception>
#include <filesystem>
#include <iterator>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "errors.h"
#include "ingest.h"
#include "io.h"
#include "metrics.h"
#include "model.h"
#include "paraeval/paraeval.h"
#include "parabuild.h"
#include "pipeline.h"
#include "report.h"
#include "sampling.h"
#include "sim.h"

struct paraeval_ratings {
  std::vector<paraeval::RatingRecord> records;
};

struct paraeval_validation {
  std::size_t records = 0;
  paraeval::ValidationReport report;
};

struct paraeval_paragraphs {
  std::vector<paraeval::ParagraphInstance> items;
};

struct paraeval_scores {
  std::vector<paraeval::ScoreTable> tables;
};

struct paraeval_report {
  paraeval::Report report;
  std::string tsv;
};

namespace {

thread_local std::string last_error;

paraeval_status Fail(paraeval_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs fn, mapping exceptions to status codes.
template <typename Fn>
paraeval_status Guard(Fn&& fn) {
  try {
    fn();
    return PARAEVAL_OK;
  } catch (const paraeval::IoError& e) {
    return Fail(PARAEVAL_ERROR_IO, e.what());
  } catch (const paraeval::DataError& e) {
    return Fail(PARAEVAL_ERROR_DATA, e.what());
  } catch (const paraeval::ArgumentError& e) {
    return Fail(PARAEVAL_ERROR_ARGUMENT, e.what());
  } catch (const paraeval::UnsupportedError& e) {
    return Fail(PARAEVAL_ERROR_UNSUPPORTED, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(PARAEVAL_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(PARAEVAL_ERROR_INTERNAL, e.what());
  } catch (...) {
    return Fail(PARAEVAL_ERROR_INTERNAL, "unknown error");
  }
}

#define PARAEVAL_REQUIRE(cond)                                        \
  do {                                                                \
    if (!(cond)) {                                                    \
      return Fail(PARAEVAL_ERROR_ARGUMENT, "null argument: " #cond); \
    }                                                                 \
  } while (0)

paraeval_report* MakeReport(paraeval::Report report) {
  auto* out = new paraeval_report{std::move(report), {}};
  out->tsv = paraeval::FormatReportTsv(out->report);
  return out;
}

paraeval::SimConfig ToSimConfig(const paraeval_sim_config& c) {
  paraeval::SimConfig config;
  config.n_items = c.n_items;
  config.n_systems = c.n_systems;
  config.max_k = c.max_k;
  config.sigma_quality = c.sigma_quality;
  config.sigma_human = c.sigma_human;
  config.sigma_metric = c.sigma_metric;
  config.system_mean_spread = c.system_mean_spread;
  config.seed = c.seed;
  return config;
}

void FromSimConfig(const paraeval::SimConfig& config, paraeval_sim_config* c) {
  c->n_items = config.n_items;
  c->n_systems = config.n_systems;
  c->max_k = config.max_k;
  c->sigma_quality = config.sigma_quality;
  c->sigma_human = config.sigma_human;
  c->sigma_metric = config.sigma_metric;
  c->system_mean_spread = config.system_mean_spread;
  c->seed = config.seed;
}

}  // namespace

extern "C" {

const char* paraeval_version(void) { return PARAEVAL_VERSION; }

const char* paraeval_last_error(void) { return last_error.c_str(); }

const char* paraeval_status_name(paraeval_status status) {
  switch (status) {
    case PARAEVAL_OK:
      return "ok";
    case PARAEVAL_ERROR_ARGUMENT:
      return "argument error";
    case PARAEVAL_ERROR_DATA:
      return "data error";
    case PARAEVAL_ERROR_IO:
      return "i/o error";
    case PARAEVAL_ERROR_UNSUPPORTED:
      return "unsupported";
    case PARAEVAL_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

paraeval_status paraeval_ratings_read(const char* path,
                                      paraeval_ratings** out) {
  PARAEVAL_REQUIRE(path && out);
  return Guard([&] {
    const std::string bytes = paraeval::ReadInput(path);
    try {
      *out = new paraeval_ratings{paraeval::ParseRatings(bytes)};
    } catch (const paraeval::DataError& e) {
      throw paraeval::DataError(std::string(path) + ": " + e.what());
    }
  });
}

paraeval_status paraeval_ratings_parse(const char* data, size_t size,
                                       paraeval_ratings** out) {
  PARAEVAL_REQUIRE((data || size == 0) && out);
  return Guard([&] {
    *out = new paraeval_ratings{
        paraeval::ParseRatings(std::string_view(data ? data : "", size))};
  });
}

size_t paraeval_ratings_size(const paraeval_ratings* ratings) {
  return ratings ? ratings->records.size() : 0;
}

void paraeval_ratings_free(paraeval_ratings* ratings) { delete ratings; }

paraeval_status paraeval_validate_file(const char* path,
                                       paraeval_validation** out) {
  PARAEVAL_REQUIRE(path && out);
  return Guard([&] {
    const std::string bytes = paraeval::ReadInput(path);
    std::vector<paraeval::RatingRecord> records;
    try {
      records = paraeval::ParseRatingsUnchecked(bytes);
    } catch (const paraeval::DataError& e) {
      throw paraeval::DataError(std::string(path) + ": " + e.what());
    }
    *out = new paraeval_validation{records.size(),
                                   paraeval::ValidateRatings(records)};
  });
}

size_t paraeval_validation_records(const paraeval_validation* validation) {
  return validation ? validation->records : 0;
}

size_t paraeval_validation_error_count(const paraeval_validation* validation) {
  return validation ? validation->report.errors.size() : 0;
}

const char* paraeval_validation_error(const paraeval_validation* validation,
                                      size_t index) {
  if (!validation || index >= validation->report.errors.size()) return nullptr;
  return validation->report.errors[index].c_str();
}

size_t paraeval_validation_warning_count(
    const paraeval_validation* validation) {
  return validation ? validation->report.warnings.size() : 0;
}

const char* paraeval_validation_warning(const paraeval_validation* validation,
                                        size_t index) {
  if (!validation || index >= validation->report.warnings.size()) {
    return nullptr;
  }
  return validation->report.warnings[index].c_str();
}

void paraeval_validation_free(paraeval_validation* validation) {
  delete validation;
}

paraeval_status paraeval_paragraphs_build(const paraeval_ratings* ratings,
                                          int k, paraeval_paragraphs** out) {
  PARAEVAL_REQUIRE(ratings && out);
  return Guard([&] {
    *out = new paraeval_paragraphs{
        paraeval::BuildParagraphs(ratings->records, k)};
  });
}

paraeval_status paraeval_paragraphs_build_many(const paraeval_ratings* ratings,
                                               const int* ks, size_t n_ks,
                                               int threads,
                                               paraeval_paragraphs** out) {
  PARAEVAL_REQUIRE(ratings && (ks || n_ks == 0) && out);
  return Guard([&] {
    const std::vector<int> k_list(ks, ks + n_ks);
    auto built =
        paraeval::BuildParagraphsForKs(ratings->records, k_list, threads);
    for (size_t i = 0; i < n_ks; ++i) {
      out[i] = new paraeval_paragraphs{std::move(built[i])};
    }
  });
}

paraeval_status paraeval_paragraphs_read(const char* path,
                                         paraeval_paragraphs** out) {
  PARAEVAL_REQUIRE(path && out);
  return Guard([&] {
    auto result = std::make_unique<paraeval_paragraphs>();
    for (const auto& file : paraeval::ExpandInputs({path})) {
      const std::string bytes = paraeval::ReadInput(file);
      try {
        auto items = paraeval::ReadParagraphs(bytes);
        std::move(items.begin(), items.end(),
                  std::back_inserter(result->items));
      } catch (const paraeval::DataError& e) {
        throw paraeval::DataError(file.string() + ": " + e.what());
      }
    }
    *out = result.release();
  });
}

paraeval_status paraeval_paragraphs_write(
    const paraeval_paragraphs* paragraphs, const char* path) {
  PARAEVAL_REQUIRE(paragraphs && path);
  return Guard([&] {
    paraeval::WriteFileAtomic(path,
                              paraeval::WriteParagraphs(paragraphs->items));
  });
}

paraeval_status paraeval_paragraphs_new(paraeval_paragraphs** out) {
  PARAEVAL_REQUIRE(out);
  return Guard([&] { *out = new paraeval_paragraphs{}; });
}

paraeval_status paraeval_paragraphs_append(paraeval_paragraphs* dst,
                                           const paraeval_paragraphs* src) {
  PARAEVAL_REQUIRE(dst && src);
  return Guard([&] {
    if (dst == src) {
      auto copy = src->items;
      dst->items.insert(dst->items.end(), copy.begin(), copy.end());
    } else {
      dst->items.insert(dst->items.end(), src->items.begin(),
                        src->items.end());
    }
  });
}

size_t paraeval_paragraphs_size(const paraeval_paragraphs* paragraphs) {
  return paragraphs ? paragraphs->items.size() : 0;
}

void paraeval_paragraphs_free(paraeval_paragraphs* paragraphs) {
  delete paragraphs;
}

paraeval_status paraeval_sample_uniform(const paraeval_paragraphs* pool,
                                        size_t n, uint64_t seed,
                                        paraeval_paragraphs** out) {
  PARAEVAL_REQUIRE(pool && out);
  return Guard([&] {
    *out = new paraeval_paragraphs{
        paraeval::SampleUniform(pool->items, n, seed)};
  });
}

paraeval_status paraeval_sample_stratified(const paraeval_paragraphs* pool,
                                           size_t n, const int* ks,
                                           size_t n_ks, uint64_t seed,
                                           paraeval_paragraphs** out) {
  PARAEVAL_REQUIRE(pool && (ks || n_ks == 0) && out);
  return Guard([&] {
    const std::vector<int> k_list(ks, ks + n_ks);
    *out = new paraeval_paragraphs{
        paraeval::SampleStratified(pool->items, n, k_list, seed)};
  });
}

paraeval_status paraeval_scores_read(const char* path, paraeval_scores** out) {
  PARAEVAL_REQUIRE(path && out);
  return Guard([&] {
    const std::string bytes = paraeval::ReadInput(path);
    try {
      *out = new paraeval_scores{paraeval::ParseExternalScores(bytes)};
    } catch (const paraeval::DataError& e) {
      throw paraeval::DataError(std::string(path) + ": " + e.what());
    }
  });
}

paraeval_status paraeval_scores_write(const paraeval_scores* scores,
                                      const char* path) {
  PARAEVAL_REQUIRE(scores && path);
  return Guard([&] {
    paraeval::WriteFileAtomic(path, paraeval::WriteScores(scores->tables));
  });
}

paraeval_status paraeval_scores_compute(const paraeval_paragraphs* paragraphs,
                                        const char* metric, const char* mode,
                                        paraeval_scores** out) {
  PARAEVAL_REQUIRE(paragraphs && metric && mode && out);
  return Guard([&] {
    const paraeval::BuiltinMetric builtin =
        paraeval::ParseBuiltinMetric(metric);
    const std::string mode_name(mode);
    if (mode_name == "direct") {
      *out = new paraeval_scores{
          paraeval::ScoreDirect(builtin, paragraphs->items)};
    } else if (mode_name == "aligned") {
      *out = new paraeval_scores{
          paraeval::ScoreAlignedAvg(builtin, paragraphs->items)};
    } else {
      throw paraeval::ArgumentError("unknown scoring mode '" + mode_name +
                                    "' (available: direct, aligned)");
    }
  });
}

paraeval_status paraeval_scores_new(paraeval_scores** out) {
  PARAEVAL_REQUIRE(out);
  return Guard([&] { *out = new paraeval_scores{}; });
}

paraeval_status paraeval_scores_append(paraeval_scores* dst,
                                       const paraeval_scores* src) {
  PARAEVAL_REQUIRE(dst && src);
  return Guard([&] {
    auto copy = src->tables;
    dst->tables.insert(dst->tables.end(), copy.begin(), copy.end());
  });
}

size_t paraeval_scores_table_count(const paraeval_scores* scores) {
  return scores ? scores->tables.size() : 0;
}

size_t paraeval_scores_entry_count(const paraeval_scores* scores) {
  if (!scores) return 0;
  size_t total = 0;
  for (const auto& t : scores->tables) total += t.size();
  return total;
}

void paraeval_scores_free(paraeval_scores* scores) { delete scores; }

void paraeval_metaeval_options_init(paraeval_metaeval_options* options) {
  if (!options) return;
  *options = paraeval_metaeval_options{};
  options->system_level = 1;
  options->segment_level = 1;
  options->threads = 1;
}

paraeval_status paraeval_metaeval(const paraeval_paragraphs* paragraphs,
                                  const paraeval_scores* scores,
                                  const paraeval_metaeval_options* options,
                                  paraeval_report** out) {
  PARAEVAL_REQUIRE(paragraphs && scores && options && out);
  return Guard([&] {
    paraeval::MetaEvalOptions o;
    o.system_level = options->system_level != 0;
    o.segment_level = options->segment_level != 0;
    o.tau_optimize = options->tau_optimize != 0;
    o.pearson = options->pearson != 0;
    o.ties = options->ties != 0;
    o.calibration_fraction = options->calibration_fraction;
    o.calibration_seed = options->calibration_seed;
    o.threads = options->threads;
    *out = MakeReport(
        paraeval::RunMetaEval(paragraphs->items, scores->tables, o));
  });
}

paraeval_status paraeval_tie_report(const paraeval_paragraphs* paragraphs,
                                    const paraeval_scores* scores, int threads,
                                    paraeval_report** out) {
  PARAEVAL_REQUIRE(paragraphs && out);
  return Guard([&] {
    static const std::vector<paraeval::ScoreTable> kNoTables;
    *out = MakeReport(paraeval::RunTieReport(
        paragraphs->items, scores ? scores->tables : kNoTables, threads));
  });
}

paraeval_status paraeval_compare_modes(const paraeval_paragraphs* paragraphs,
                                       const paraeval_scores* direct,
                                       const paraeval_scores* aligned,
                                       int threads, paraeval_report** out) {
  PARAEVAL_REQUIRE(paragraphs && direct && aligned && out);
  return Guard([&] {
    *out = MakeReport(paraeval::RunCompareModes(
        paragraphs->items, direct->tables, aligned->tables, threads));
  });
}

void paraeval_stats_options_init(paraeval_stats_options* options) {
  if (!options) return;
  static const double kDefaultPercentiles[] = {25.0, 50.0, 75.0};
  options->lengths = 1;
  options->percentiles = kDefaultPercentiles;
  options->n_percentiles = 3;
  options->truncation = 0;
  options->budget = 1024;
  options->counter = "whitespace";
  options->threads = 1;
}

paraeval_status paraeval_stats(const paraeval_paragraphs* paragraphs,
                               const paraeval_stats_options* options,
                               paraeval_report** out) {
  PARAEVAL_REQUIRE(paragraphs && options && out);
  PARAEVAL_REQUIRE(options->percentiles || options->n_percentiles == 0);
  return Guard([&] {
    paraeval::StatsOptions o;
    o.lengths = options->lengths != 0;
    o.percentiles.assign(options->percentiles,
                         options->percentiles + options->n_percentiles);
    o.truncation = options->truncation != 0;
    o.budget = options->budget;
    o.counter = options->counter ? options->counter : "whitespace";
    o.threads = options->threads;
    *out = MakeReport(paraeval::RunStats(paragraphs->items, o));
  });
}

paraeval_status paraeval_paragraph_counts(const paraeval_paragraphs* paragraphs,
                                          paraeval_report** out) {
  PARAEVAL_REQUIRE(paragraphs && out);
  return Guard([&] {
    *out = MakeReport(paraeval::ParagraphCountReport(paragraphs->items));
  });
}

void paraeval_sim_config_init(paraeval_sim_config* config) {
  if (config) FromSimConfig(paraeval::SimConfig{}, config);
}

paraeval_status paraeval_sim_config_read(const char* path,
                                         paraeval_sim_config* config) {
  PARAEVAL_REQUIRE(path && config);
  return Guard([&] {
    FromSimConfig(paraeval::ParseSimConfig(paraeval::ReadInput(path)), config);
  });
}

paraeval_status paraeval_simulate(const paraeval_sim_config* config,
                                  const int* ks, size_t n_ks, int n_seeds,
                                  int threads, paraeval_report** out) {
  PARAEVAL_REQUIRE(config && (ks || n_ks == 0) && out);
  return Guard([&] {
    const std::vector<int> k_list(ks, ks + n_ks);
    *out = MakeReport(paraeval::RunSimulation(ToSimConfig(*config), k_list,
                                              n_seeds, threads));
  });
}

size_t paraeval_report_size(const paraeval_report* report) {
  return report ? report->report.rows.size() : 0;
}

paraeval_status paraeval_report_row_at(const paraeval_report* report,
                                       size_t index, paraeval_report_row* row) {
  PARAEVAL_REQUIRE(report && row);
  if (index >= report->report.rows.size()) {
    return Fail(PARAEVAL_ERROR_ARGUMENT, "report row index out of range");
  }
  const paraeval::ReportRow& r = report->report.rows[index];
  row->dataset = r.dataset.c_str();
  row->lang_pair = r.lang_pair.c_str();
  row->k = r.k;
  row->metric = r.metric.c_str();
  row->mode = r.mode.c_str();
  row->statistic = r.statistic.c_str();
  row->value = r.value;
  row->has_epsilon = r.epsilon.has_value() ? 1 : 0;
  row->epsilon = r.epsilon.value_or(0.0);
  return PARAEVAL_OK;
}

size_t paraeval_report_warning_count(const paraeval_report* report) {
  return report ? report->report.warnings.size() : 0;
}

const char* paraeval_report_warning(const paraeval_report* report,
                                    size_t index) {
  if (!report || index >= report->report.warnings.size()) return nullptr;
  return report->report.warnings[index].c_str();
}

paraeval_status paraeval_report_write(const paraeval_report* report,
                                      const char* prefix) {
  PARAEVAL_REQUIRE(report && prefix);
  return Guard([&] {
    const std::string base(prefix);
    paraeval::WriteFileAtomic(base + ".tsv", report->tsv);
    paraeval::WriteFileAtomic(base + ".jsonl",
                              paraeval::FormatReportJsonl(report->report));
  });
}

const char* paraeval_report_tsv(const paraeval_report* report) {
  return report ? report->tsv.c_str() : "";
}

void paraeval_report_free(paraeval_report* report) { delete report; }

paraeval_status paraeval_parse_k_list(const char* text, int* ks,
                                      size_t capacity, size_t* count) {
  PARAEVAL_REQUIRE(text && count && (ks || capacity == 0));
  return Guard([&] {
    const std::vector<int> parsed = paraeval::ParseKList(text);
    for (size_t i = 0; i < parsed.size() && i < capacity; ++i) ks[i] = parsed[i];
    *count = parsed.size();
  });
}

}  // extern "C"
