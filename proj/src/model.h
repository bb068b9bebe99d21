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

#ifndef PARAEVAL_MODEL_H_
#define PARAEVAL_MODEL_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paraeval {

enum class ScoreType { kDaZ, kMqm };

std::string_view ScoreTypeName(ScoreType type);
std::optional<ScoreType> ParseScoreType(std::string_view name);

// One sentence-level human rating. Scores are post rater-normalization.
struct RatingRecord {
  std::string dataset_id;
  std::string lang_pair;
  std::string system_id;
  std::string doc_id;
  std::int64_t sent_index = 0;
  std::string rater_id;
  double score = 0.0;
  ScoreType score_type = ScoreType::kDaZ;
  std::string source_text;
  std::string reference_text;
  std::string hypothesis_text;
  std::optional<std::int64_t> token_count_ref;
  std::optional<std::int64_t> token_count_hyp;

  bool operator==(const RatingRecord&) const = default;
};

// Identifies a paragraph slot within one document: the window
// [start_index, start_index + k).
struct ItemKey {
  std::string doc_id;
  std::int64_t start_index = 0;
  int k = 0;

  auto operator<=>(const ItemKey&) const = default;
  bool operator==(const ItemKey&) const = default;
};

std::string ToString(const ItemKey& key);

// A window of k consecutive sentences from one system's translation of a
// document, all rated by the same rater.
struct ParagraphInstance {
  std::string dataset_id;
  std::string lang_pair;
  std::string system_id;
  std::string doc_id;
  std::int64_t start_index = 0;
  int k = 0;
  ScoreType score_type = ScoreType::kDaZ;
  std::string rater_id;
  double human_score = 0.0;
  std::vector<double> sentence_scores;
  // Sentence texts joined by a single space.
  std::string source_text;
  std::string reference_text;
  std::string hypothesis_text;
  // Per-sentence texts. Empty when the sentence alignment is unknown.
  std::vector<std::string> source_sentences;
  std::vector<std::string> reference_sentences;
  std::vector<std::string> hypothesis_sentences;
  std::optional<std::int64_t> token_count_ref;
  std::optional<std::int64_t> token_count_hyp;

  ItemKey item_key() const { return {doc_id, start_index, k}; }
  bool has_alignment() const { return !hypothesis_sentences.empty(); }
  bool operator==(const ParagraphInstance&) const = default;
};

std::string DescribeParagraph(const ParagraphInstance& p);

// Orders by (dataset, lang_pair, k, system, doc, start).
bool CanonicalLess(const ParagraphInstance& a, const ParagraphInstance& b);

// Checks sentence_scores size, score aggregation and sentence alignment.
// Throws DataError naming the paragraph key.
void CheckParagraph(const ParagraphInstance& p);

enum class ScoringMode { kDirect, kAlignedAvg, kExternal };

std::string_view ScoringModeName(ScoringMode mode);

struct SystemItemKey {
  std::string system_id;
  ItemKey item;

  auto operator<=>(const SystemItemKey&) const = default;
  bool operator==(const SystemItemKey&) const = default;
};

// Metric scores for one (lang_pair, k), keyed by (system, item).
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(std::string metric_name, ScoringMode mode, std::string lang_pair,
             int k);

  const std::string& metric_name() const { return metric_name_; }
  ScoringMode mode() const { return mode_; }
  const std::string& lang_pair() const { return lang_pair_; }
  int k() const { return k_; }
  const std::map<SystemItemKey, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Throws DataError on a duplicate key or a non-finite score.
  void Insert(const std::string& system_id, const ItemKey& item, double score);

  std::optional<double> Find(const std::string& system_id,
                             const ItemKey& item) const;

 private:
  std::string metric_name_;
  ScoringMode mode_ = ScoringMode::kExternal;
  std::string lang_pair_;
  int k_ = 0;
  std::map<SystemItemKey, double> entries_;
};

struct PairedScore {
  std::optional<double> metric;
  double human = 0.0;
};

// Competing systems' paragraphs for the same (doc, start, k) slot.
struct EvalItem {
  ItemKey key;
  std::map<std::string, PairedScore> per_system;
};

struct TauCalibration {
  double epsilon = 0.0;
  double accuracy_at_epsilon = 0.0;
};

struct SimConfig {
  int n_items = 200;
  int n_systems = 8;
  int max_k = 10;
  double sigma_quality = 1.0;
  double sigma_human = 1.0;
  double sigma_metric = 1.0;
  double system_mean_spread = 0.5;
  std::uint64_t seed = 0;

  // Throws ArgumentError when a field is out of range.
  void Validate() const;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

// Reports uniqueness violations, non-finite scores, negative positions and
// score type mixes. The report is sorted, so it does not depend on input
// order.
ValidationReport ValidateRatings(std::span<const RatingRecord> records);

}  // namespace paraeval

#endif  // PARAEVAL_MODEL_H_
