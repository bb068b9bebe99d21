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

#ifndef PARAEVAL_PARABUILD_H_
#define PARAEVAL_PARABUILD_H_

#include <span>
#include <vector>

#include "model.h"

namespace paraeval {

// Mean for DA_Z, sum for MQM, accumulated in list order. Throws
// ArgumentError on an empty list.
double AggregateScore(std::span<const double> sentence_scores, ScoreType type);

// Sliding-window paragraph construction. For every (dataset, lang_pair,
// system, doc) the window [i, i + k) starts at i = 0. A window whose k
// positions are all rated by one rater is emitted and the window jumps to
// i + k; otherwise it moves to i + 1. Unrated positions block a window.
//
// Output is sorted by (dataset, lang_pair, system, doc, start). Records must
// already be validated. Throws ArgumentError when k < 1.
std::vector<ParagraphInstance> BuildParagraphs(
    std::span<const RatingRecord> records, int k);

// Groups paragraphs by (doc, start, k) and keeps slots covered by at least
// two systems. Human scores are filled in; metric scores are left empty.
// All paragraphs must share (dataset, lang_pair, k).
std::vector<EvalItem> BuildEvalItems(
    std::span<const ParagraphInstance> paragraphs, int k);

}  // namespace paraeval

#endif  // PARAEVAL_PARABUILD_H_
