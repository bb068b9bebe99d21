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

#ifndef PARAEVAL_PIPELINE_H_
#define PARAEVAL_PIPELINE_H_

// Batch runs over whole datasets. Everything here is organized by
// evaluation unit, a (dataset, lang_pair, k) triple; units are processed
// independently and merged in canonical unit order.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "model.h"
#include "report.h"

namespace paraeval {

struct UnitKey {
  std::string dataset_id;
  std::string lang_pair;
  int k = 0;

  auto operator<=>(const UnitKey&) const = default;
  bool operator==(const UnitKey&) const = default;
};

// Paragraphs of each unit in canonical order.
std::map<UnitKey, std::vector<ParagraphInstance>> GroupByUnit(
    std::span<const ParagraphInstance> paragraphs);

// Builds paragraphs for every k (in parallel across k). Result i holds the
// paragraphs for ks[i].
std::vector<std::vector<ParagraphInstance>> BuildParagraphsForKs(
    std::span<const RatingRecord> records, std::span<const int> ks,
    int threads);

// Rows "paragraph_count" per unit.
Report ParagraphCountReport(std::span<const ParagraphInstance> paragraphs);

struct MetaEvalOptions {
  bool system_level = true;
  bool segment_level = true;
  bool tau_optimize = false;
  bool pearson = false;
  bool ties = false;
  // When > 0, this fraction of each unit's items calibrates epsilon and the
  // remaining items are reported.
  double calibration_fraction = 0.0;
  std::uint64_t calibration_seed = 0;
  int threads = 1;
};

// Joins each score table with the paragraphs of every unit sharing its
// (lang_pair, k) on (system, doc, start, k). Emits, per (unit, table):
// system_accuracy, segment_accuracy (epsilon 0), segment_accuracy_tau,
// pearson_no_grouping, tie_rate_human and tie_rate_metric as selected.
Report RunMetaEval(std::span<const ParagraphInstance> paragraphs,
                   std::span<const ScoreTable> tables,
                   const MetaEvalOptions& options);

// tie_rate_human per unit, plus tie_rate_metric per (unit, table).
Report RunTieReport(std::span<const ParagraphInstance> paragraphs,
                    std::span<const ScoreTable> tables, int threads);

// mode_correlation per unit for every metric present in both `direct` and
// `aligned`, restricted to the unit's paragraphs.
Report RunCompareModes(std::span<const ParagraphInstance> paragraphs,
                       std::span<const ScoreTable> direct,
                       std::span<const ScoreTable> aligned, int threads);

struct StatsOptions {
  bool lengths = true;
  std::vector<double> percentiles{25.0, 50.0, 75.0};
  bool truncation = false;
  std::int64_t budget = 1024;
  std::string counter = "whitespace";
  int threads = 1;
};

// paragraph_count, length_p<P> and truncated_count / truncated_fraction
// per unit.
Report RunStats(std::span<const ParagraphInstance> paragraphs,
                const StatsOptions& options);

// segment_accuracy_mean and segment_accuracy_sd per k of the noise curve.
Report RunSimulation(const SimConfig& config, std::span<const int> ks,
                     int n_seeds, int threads);

// Parses "a-b" ranges and comma lists ("1-3,5"). Values must be positive.
std::vector<int> ParseKList(const std::string& text);

}  // namespace paraeval

#endif  // PARAEVAL_PIPELINE_H_
