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

#include "model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "errors.h"
#include "parabuild.h"

namespace paraeval {

std::string_view ScoreTypeName(ScoreType type) {
  switch (type) {
    case ScoreType::kDaZ:
      return "DA_Z";
    case ScoreType::kMqm:
      return "MQM";
  }
  return "?";
}

std::optional<ScoreType> ParseScoreType(std::string_view name) {
  if (name == "DA_Z") return ScoreType::kDaZ;
  if (name == "MQM") return ScoreType::kMqm;
  return std::nullopt;
}

std::string_view ScoringModeName(ScoringMode mode) {
  switch (mode) {
    case ScoringMode::kDirect:
      return "direct";
    case ScoringMode::kAlignedAvg:
      return "aligned";
    case ScoringMode::kExternal:
      return "external";
  }
  return "?";
}

std::string ToString(const ItemKey& key) {
  std::ostringstream out;
  out << "(" << key.doc_id << ", " << key.start_index << ", " << key.k << ")";
  return out.str();
}

std::string DescribeParagraph(const ParagraphInstance& p) {
  std::ostringstream out;
  out << "paragraph (dataset=" << p.dataset_id << ", lang_pair=" << p.lang_pair
      << ", system=" << p.system_id << ", doc=" << p.doc_id
      << ", start=" << p.start_index << ", k=" << p.k << ")";
  return out.str();
}

bool CanonicalLess(const ParagraphInstance& a, const ParagraphInstance& b) {
  return std::tie(a.dataset_id, a.lang_pair, a.k, a.system_id, a.doc_id,
                  a.start_index) < std::tie(b.dataset_id, b.lang_pair, b.k,
                                            b.system_id, b.doc_id,
                                            b.start_index);
}

namespace {

std::string JoinWithSpace(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += parts[i];
  }
  return out;
}

void CheckSentences(const ParagraphInstance& p,
                    const std::vector<std::string>& sentences,
                    const std::string& joined, std::string_view field) {
  if (sentences.size() != static_cast<std::size_t>(p.k)) {
    throw DataError(DescribeParagraph(p) + ": expected " +
                    std::to_string(p.k) + " " + std::string(field) +
                    ", got " + std::to_string(sentences.size()));
  }
  if (JoinWithSpace(sentences) != joined) {
    throw DataError(DescribeParagraph(p) + ": " + std::string(field) +
                    " do not join to the paragraph text");
  }
}

}  // namespace

void CheckParagraph(const ParagraphInstance& p) {
  if (p.k < 1) {
    throw DataError(DescribeParagraph(p) + ": k must be positive");
  }
  if (p.start_index < 0) {
    throw DataError(DescribeParagraph(p) + ": negative start_index");
  }
  if (p.sentence_scores.size() != static_cast<std::size_t>(p.k)) {
    throw DataError(DescribeParagraph(p) + ": expected " +
                    std::to_string(p.k) + " sentence_scores, got " +
                    std::to_string(p.sentence_scores.size()));
  }
  for (double s : p.sentence_scores) {
    if (!std::isfinite(s)) {
      throw DataError(DescribeParagraph(p) + ": non-finite sentence score");
    }
  }
  if (!std::isfinite(p.human_score)) {
    throw DataError(DescribeParagraph(p) + ": non-finite human_score");
  }
  const double expected = AggregateScore(p.sentence_scores, p.score_type);
  if (std::abs(expected - p.human_score) >
      1e-9 * std::max(1.0, std::abs(expected))) {
    throw DataError(DescribeParagraph(p) +
                    ": human_score does not aggregate sentence_scores");
  }
  const bool any_alignment = !p.source_sentences.empty() ||
                             !p.reference_sentences.empty() ||
                             !p.hypothesis_sentences.empty();
  if (any_alignment) {
    CheckSentences(p, p.source_sentences, p.source_text, "source_sentences");
    CheckSentences(p, p.reference_sentences, p.reference_text,
                   "reference_sentences");
    CheckSentences(p, p.hypothesis_sentences, p.hypothesis_text,
                   "hypothesis_sentences");
  }
}

ScoreTable::ScoreTable(std::string metric_name, ScoringMode mode,
                       std::string lang_pair, int k)
    : metric_name_(std::move(metric_name)),
      mode_(mode),
      lang_pair_(std::move(lang_pair)),
      k_(k) {}

void ScoreTable::Insert(const std::string& system_id, const ItemKey& item,
                        double score) {
  if (!std::isfinite(score)) {
    throw DataError("non-finite score for system " + system_id + " item " +
                    ToString(item));
  }
  auto [it, inserted] = entries_.emplace(SystemItemKey{system_id, item}, score);
  if (!inserted) {
    throw DataError("duplicate score key (metric=" + metric_name_ +
                    ", lang_pair=" + lang_pair_ + ", system=" + system_id +
                    ", item=" + ToString(item) + ")");
  }
}

std::optional<double> ScoreTable::Find(const std::string& system_id,
                                       const ItemKey& item) const {
  auto it = entries_.find(SystemItemKey{system_id, item});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SimConfig::Validate() const {
  if (n_items < 1) throw ArgumentError("n_items must be positive");
  if (n_systems < 2) throw ArgumentError("n_systems must be at least 2");
  if (max_k < 1) throw ArgumentError("max_k must be positive");
  for (double sigma : {sigma_quality, sigma_human, sigma_metric,
                       system_mean_spread}) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw ArgumentError("noise scales must be finite and non-negative");
    }
  }
}

ValidationReport ValidateRatings(std::span<const RatingRecord> records) {
  using Key = std::tuple<std::string, std::string, std::string, std::string,
                         std::int64_t>;
  std::map<Key, int> counts;
  std::map<ScoreType, int> types;
  std::set<std::string> errors;
  std::set<std::string> warnings;

  auto describe = [](const RatingRecord& r) {
    std::ostringstream out;
    out << "(dataset=" << r.dataset_id << ", lang_pair=" << r.lang_pair
        << ", system=" << r.system_id << ", doc=" << r.doc_id
        << ", sent_index=" << r.sent_index << ")";
    return out.str();
  };

  for (const RatingRecord& r : records) {
    ++counts[Key{r.dataset_id, r.lang_pair, r.system_id, r.doc_id,
                 r.sent_index}];
    ++types[r.score_type];
    if (!std::isfinite(r.score)) {
      errors.insert("non-finite score at " + describe(r));
    }
    if (r.sent_index < 0) {
      errors.insert("negative sent_index at " + describe(r));
    }
    if ((r.token_count_ref && *r.token_count_ref < 0) ||
        (r.token_count_hyp && *r.token_count_hyp < 0)) {
      errors.insert("negative token count at " + describe(r));
    }
    if (r.hypothesis_text.empty()) {
      warnings.insert("empty hypothesis_text at " + describe(r));
    }
    if (r.reference_text.empty()) {
      warnings.insert("empty reference_text at " + describe(r));
    }
  }
  for (const auto& [key, count] : counts) {
    if (count < 2) continue;
    std::ostringstream out;
    out << "duplicate key (dataset=" << std::get<0>(key)
        << ", lang_pair=" << std::get<1>(key)
        << ", system=" << std::get<2>(key) << ", doc=" << std::get<3>(key)
        << ", sent_index=" << std::get<4>(key) << ") occurs " << count
        << " times";
    errors.insert(out.str());
  }
  if (types.size() > 1) {
    std::ostringstream out;
    out << "mixed score types:";
    for (const auto& [type, count] : types) {
      out << " " << ScoreTypeName(type) << "=" << count;
    }
    errors.insert(out.str());
  }

  ValidationReport report;
  report.errors.assign(errors.begin(), errors.end());
  report.warnings.assign(warnings.begin(), warnings.end());
  return report;
}

}  // namespace paraeval
