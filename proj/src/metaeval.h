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

#ifndef PARAEVAL_METAEVAL_H_
#define PARAEVAL_METAEVAL_H_

#include <map>
#include <span>
#include <string>

#include "model.h"

namespace paraeval {

// Per-system mean over that system's own entries.
std::map<std::string, double> SystemScores(const ScoreTable& table);

// Fraction of system pairs, among those with a human score difference, on
// which the metric orders the pair the same way. A metric tie on such a
// pair is a disagreement; human-tied pairs are skipped entirely.
// Throws ArgumentError for fewer than two systems or differing key sets,
// and DataError when every pair is human-tied.
double SystemPairwiseAccuracy(const std::map<std::string, double>& metric,
                              const std::map<std::string, double>& human);

// Group-by-item pairwise accuracy with tie credit. Within an item, a pair's
// metric relation is a tie when |metric delta| <= epsilon and its human
// relation is a tie when the human scores are exactly equal; the pair is
// correct when the relations match. Items are averaged with equal weight.
// Systems without a metric score are ignored; items left with fewer than
// two scored systems are dropped. Throws DataError if nothing remains.
double SegmentAccuracy(std::span<const EvalItem> items, double epsilon);

// Smallest epsilon in {0} plus all within-item |metric delta| values that
// maximizes SegmentAccuracy. The reported accuracy is bit-identical to
// SegmentAccuracy(items, epsilon).
TauCalibration TauOptimize(std::span<const EvalItem> items);

// Sample Pearson correlation. Throws ArgumentError for mismatched or short
// inputs and DataError when either side has zero variance.
double PearsonNoGrouping(std::span<const double> metric,
                         std::span<const double> human);

enum class ScoreSource { kHuman, kMetric };

// Fraction of within-item system pairs whose scores are exactly equal,
// pooled over items. Uses the same item filtering as SegmentAccuracy.
double TieRate(std::span<const EvalItem> items, ScoreSource source);

// Pearson between two tables over their common keys. Throws DataError
// listing keys present in only one of them.
double ModeCorrelation(const ScoreTable& direct, const ScoreTable& aligned);

}  // namespace paraeval

#endif  // PARAEVAL_METAEVAL_H_
