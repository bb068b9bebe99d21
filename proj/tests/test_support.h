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

#ifndef PARAEVAL_TESTS_TEST_SUPPORT_H_
#define PARAEVAL_TESTS_TEST_SUPPORT_H_

// Fixture builders shared by the unit and acceptance tests.

#include <cstdint>
#include <string>
#include <vector>

#include "model.h"
#include "rng.h"

namespace paraeval::testing {

inline RatingRecord MakeRecord(const std::string& system,
                               const std::string& doc, std::int64_t index,
                               const std::string& rater, double score,
                               ScoreType type = ScoreType::kDaZ) {
  RatingRecord r;
  r.dataset_id = "wmt";
  r.lang_pair = "en-de";
  r.system_id = system;
  r.doc_id = doc;
  r.sent_index = index;
  r.rater_id = rater;
  r.score = score;
  r.score_type = type;
  const std::string tag = doc + "." + std::to_string(index);
  r.source_text = "src " + tag;
  r.reference_text = "ref " + tag;
  r.hypothesis_text = "hyp " + system + " " + tag;
  return r;
}

// A single-sentence-per-side paragraph scored `human`.
inline ParagraphInstance MakeParagraph(const std::string& system,
                                       const std::string& doc,
                                       std::int64_t start, int k,
                                       double human) {
  ParagraphInstance p;
  p.dataset_id = "wmt";
  p.lang_pair = "en-de";
  p.system_id = system;
  p.doc_id = doc;
  p.start_index = start;
  p.k = k;
  p.score_type = ScoreType::kMqm;
  p.rater_id = "r1";
  p.sentence_scores.assign(static_cast<std::size_t>(k), 0.0);
  p.sentence_scores[0] = human;
  p.human_score = human;
  p.source_text = "source";
  p.reference_text = "reference";
  p.hypothesis_text = "hypothesis";
  return p;
}

// An item whose systems are named s0, s1, ...
inline EvalItem MakeItem(const std::string& doc,
                         const std::vector<double>& metric,
                         const std::vector<double>& human) {
  EvalItem item;
  item.key = {doc, 0, 1};
  for (std::size_t i = 0; i < human.size(); ++i) {
    item.per_system["s" + std::to_string(i)] = {metric[i], human[i]};
  }
  return item;
}

// Random score tables for the meta-evaluation properties. Scores are drawn
// from a small grid so ties occur in both columns.
inline std::vector<EvalItem> RandomItems(Rng& rng, int n_systems,
                                         int n_items) {
  std::vector<EvalItem> items;
  for (int i = 0; i < n_items; ++i) {
    EvalItem item;
    item.key = {"d" + std::to_string(i), 0, 1};
    for (int s = 0; s < n_systems; ++s) {
      const double human = -static_cast<double>(rng.Below(6)) * 0.5 -
                           (rng.Below(3) == 0 ? 0.1 : 0.0);
      const double metric = static_cast<double>(rng.Below(40)) / 8.0 +
                            rng.Uniform() * (rng.Below(2) == 0 ? 0.0 : 0.3);
      item.per_system["s" + std::to_string(s)] = {metric, human};
    }
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace paraeval::testing

#endif  // PARAEVAL_TESTS_TEST_SUPPORT_H_
