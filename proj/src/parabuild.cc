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

#include "parabuild.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "errors.h"

namespace paraeval {

double AggregateScore(std::span<const double> sentence_scores,
                      ScoreType type) {
  if (sentence_scores.empty()) {
    throw ArgumentError("cannot aggregate an empty score list");
  }
  double sum = 0.0;
  for (double s : sentence_scores) sum += s;
  if (type == ScoreType::kMqm) return sum;
  return sum / static_cast<double>(sentence_scores.size());
}

namespace {

using DocKey = std::tuple<std::string, std::string, std::string, std::string>;

std::string Join(const std::vector<const RatingRecord*>& window,
                 std::string RatingRecord::*field) {
  std::string out;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += window[i]->*field;
  }
  return out;
}

ParagraphInstance MakeParagraph(const std::vector<const RatingRecord*>& window,
                                int k) {
  const RatingRecord& first = *window.front();
  ParagraphInstance p;
  p.dataset_id = first.dataset_id;
  p.lang_pair = first.lang_pair;
  p.system_id = first.system_id;
  p.doc_id = first.doc_id;
  p.start_index = first.sent_index;
  p.k = k;
  p.score_type = first.score_type;
  p.rater_id = first.rater_id;
  bool have_ref_counts = true;
  bool have_hyp_counts = true;
  std::int64_t ref_count = 0;
  std::int64_t hyp_count = 0;
  for (const RatingRecord* r : window) {
    p.sentence_scores.push_back(r->score);
    p.source_sentences.push_back(r->source_text);
    p.reference_sentences.push_back(r->reference_text);
    p.hypothesis_sentences.push_back(r->hypothesis_text);
    if (r->token_count_ref) {
      ref_count += *r->token_count_ref;
    } else {
      have_ref_counts = false;
    }
    if (r->token_count_hyp) {
      hyp_count += *r->token_count_hyp;
    } else {
      have_hyp_counts = false;
    }
  }
  p.human_score = AggregateScore(p.sentence_scores, p.score_type);
  p.source_text = Join(window, &RatingRecord::source_text);
  p.reference_text = Join(window, &RatingRecord::reference_text);
  p.hypothesis_text = Join(window, &RatingRecord::hypothesis_text);
  if (have_ref_counts) p.token_count_ref = ref_count;
  if (have_hyp_counts) p.token_count_hyp = hyp_count;
  return p;
}

}  // namespace

std::vector<ParagraphInstance> BuildParagraphs(
    std::span<const RatingRecord> records, int k) {
  if (k < 1) throw ArgumentError("k must be positive, got " + std::to_string(k));

  // Per document: sent_index -> record.
  std::map<DocKey, std::map<std::int64_t, const RatingRecord*>> docs;
  for (const RatingRecord& r : records) {
    docs[DocKey{r.dataset_id, r.lang_pair, r.system_id, r.doc_id}]
        .emplace(r.sent_index, &r);
  }

  std::vector<ParagraphInstance> out;
  std::vector<const RatingRecord*> window;
  window.reserve(k);
  for (const auto& [key, sentences] : docs) {
    const std::int64_t end = sentences.rbegin()->first + 1;
    std::int64_t i = 0;
    while (i + k <= end) {
      window.clear();
      for (std::int64_t j = i; j < i + k; ++j) {
        auto it = sentences.find(j);
        if (it == sentences.end()) break;
        if (!window.empty() && it->second->rater_id != window[0]->rater_id) {
          break;
        }
        window.push_back(it->second);
      }
      if (window.size() == static_cast<std::size_t>(k)) {
        out.push_back(MakeParagraph(window, k));
        i += k;
      } else {
        i += 1;
      }
    }
  }
  return out;
}

std::vector<EvalItem> BuildEvalItems(
    std::span<const ParagraphInstance> paragraphs, int k) {
  std::map<ItemKey, EvalItem> slots;
  for (const ParagraphInstance& p : paragraphs) {
    const ParagraphInstance& first = paragraphs.front();
    if (p.dataset_id != first.dataset_id || p.lang_pair != first.lang_pair ||
        p.k != k) {
      throw ArgumentError(
          "eval items require paragraphs from one (dataset, lang_pair, k)");
    }
    EvalItem& item = slots[p.item_key()];
    item.key = p.item_key();
    auto [it, inserted] =
        item.per_system.emplace(p.system_id, PairedScore{std::nullopt,
                                                         p.human_score});
    if (!inserted) {
      throw DataError("duplicate " + DescribeParagraph(p));
    }
  }
  std::vector<EvalItem> items;
  for (auto& [key, item] : slots) {
    if (item.per_system.size() >= 2) items.push_back(std::move(item));
  }
  return items;
}

}  // namespace paraeval
