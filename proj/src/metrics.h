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

#ifndef PARAEVAL_METRICS_H_
#define PARAEVAL_METRICS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "model.h"

namespace paraeval {

// Canonical BLEU tokenizer: every Unicode punctuation character (general
// category P) becomes its own token, then the text is split on ASCII
// whitespace. Case is preserved. Bytes that are not valid UTF-8 are kept as
// ordinary characters.
std::vector<std::string> Tokenize(std::string_view text);

bool IsUnicodePunctuation(char32_t code_point);

inline constexpr int kBleuMaxOrder = 4;

// Sufficient statistics for BLEU. matches[n] counts clipped (n+1)-gram
// matches and totals[n] the hypothesis (n+1)-grams.
struct BleuStats {
  std::array<std::int64_t, kBleuMaxOrder> matches{};
  std::array<std::int64_t, kBleuMaxOrder> totals{};
  std::int64_t hyp_length = 0;
  std::int64_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats ComputeBleuStats(std::span<const std::string> hypothesis,
                           std::span<const std::string> reference);

// Unsmoothed corpus formula: 0 if any order has no match.
double CorpusBleuFromStats(const BleuStats& stats);

// Sentence formula with exponential smoothing: the j-th order (in
// increasing n) with zero matches gets precision 1 / (2^j * totals[n]).
// Orders longer than the hypothesis are dropped from the geometric mean.
// No unigram match, or an empty side, scores 0.
double SentenceBleuFromStats(const BleuStats& stats);

// BLEU in [0, 100] for one segment, smoothed.
double SentenceBleu(std::string_view hypothesis, std::string_view reference);

// BLEU in [0, 100] from counts pooled over all pairs, unsmoothed. Throws
// ArgumentError on an empty list.
double CorpusBleu(
    std::span<const std::pair<std::string, std::string>> pairs);

enum class BuiltinMetric { kBleu };

// Accepts "bleu". Throws ArgumentError otherwise.
BuiltinMetric ParseBuiltinMetric(std::string_view name);
std::string_view BuiltinMetricName(BuiltinMetric metric);

// Scores every paragraph as one long segment. One table per
// (lang_pair, k), sorted by that pair.
std::vector<ScoreTable> ScoreDirect(
    BuiltinMetric metric, std::span<const ParagraphInstance> paragraphs);

// Scores each of a paragraph's k aligned sentence pairs and averages them.
// Throws UnsupportedError for paragraphs without sentence alignment.
std::vector<ScoreTable> ScoreAlignedAvg(
    BuiltinMetric metric, std::span<const ParagraphInstance> paragraphs);

using TokenCounter = std::function<std::int64_t(std::string_view)>;

std::int64_t WhitespaceTokenCount(std::string_view text);
// Counts UTF-8 code points.
std::int64_t CharacterCount(std::string_view text);

// Accepts "whitespace" or "char".
TokenCounter ParseTokenCounter(std::string_view name);

// Precomputed counts on the paragraph win over the counter.
std::int64_t HypothesisTokens(const ParagraphInstance& p,
                              const TokenCounter& counter);
std::int64_t ReferenceTokens(const ParagraphInstance& p,
                             const TokenCounter& counter);

// Nearest-rank percentiles of hypothesis token counts, per k. Each
// percentile must lie in (0, 100).
std::map<int, std::vector<std::int64_t>> LengthPercentiles(
    std::span<const ParagraphInstance> paragraphs, const TokenCounter& counter,
    std::span<const double> percentiles);

// Nearest-rank percentile of an unsorted sample.
std::int64_t NearestRank(std::vector<std::int64_t> values, double percentile);

struct TruncationCount {
  std::int64_t truncated = 0;
  std::int64_t total = 0;
  double fraction = 0.0;
};

// Paragraphs whose reference plus hypothesis token count exceeds `budget`,
// per k.
std::map<int, TruncationCount> TruncationStats(
    std::span<const ParagraphInstance> paragraphs, const TokenCounter& counter,
    std::int64_t budget);

}  // namespace paraeval

#endif  // PARAEVAL_METRICS_H_
