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

#include "metrics.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "errors.h"

namespace paraeval {

namespace {

struct CodePointRange {
  char32_t first;
  char32_t last;
};

constexpr CodePointRange kPunctuation[] = {
#include "unicode_punct_table.inc"
};

// Decodes one UTF-8 sequence starting at text[pos]. Returns its length in
// bytes (1 for an invalid lead or truncated sequence, decoded as the raw
// byte value).
std::size_t DecodeUtf8(std::string_view text, std::size_t pos,
                       char32_t& code_point) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(pos);
  std::size_t length = 0;
  char32_t value = 0;
  if (lead < 0x80) {
    code_point = lead;
    return 1;
  } else if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    code_point = lead;
    return 1;
  }
  if (pos + length > text.size()) {
    code_point = lead;
    return 1;
  }
  for (std::size_t i = 1; i < length; ++i) {
    if ((byte(pos + i) & 0xC0) != 0x80) {
      code_point = lead;
      return 1;
    }
    value = (value << 6) | (byte(pos + i) & 0x3F);
  }
  code_point = value;
  return length;
}

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

bool IsUnicodePunctuation(char32_t code_point) {
  auto it = std::upper_bound(
      std::begin(kPunctuation), std::end(kPunctuation), code_point,
      [](char32_t cp, const CodePointRange& r) { return cp < r.first; });
  if (it == std::begin(kPunctuation)) return false;
  --it;
  return code_point <= it->last;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (IsAsciiSpace(text[pos])) {
      flush();
      ++pos;
      continue;
    }
    char32_t cp = 0;
    const std::size_t length = DecodeUtf8(text, pos, cp);
    if (IsUnicodePunctuation(cp)) {
      flush();
      tokens.emplace_back(text.substr(pos, length));
    } else {
      current.append(text.substr(pos, length));
    }
    pos += length;
  }
  flush();
  return tokens;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::int64_t>;

NgramCounts CountNgrams(std::span<const std::string> tokens, int order) {
  NgramCounts counts;
  if (tokens.size() < static_cast<std::size_t>(order)) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + i,
                                       tokens.begin() + i + order);
    ++counts[std::move(gram)];
  }
  return counts;
}

double BrevityPenalty(const BleuStats& stats) {
  if (stats.hyp_length >= stats.ref_length) return 1.0;
  return std::exp(1.0 - static_cast<double>(stats.ref_length) /
                            static_cast<double>(stats.hyp_length));
}

}  // namespace

BleuStats ComputeBleuStats(std::span<const std::string> hypothesis,
                           std::span<const std::string> reference) {
  BleuStats stats;
  stats.hyp_length = static_cast<std::int64_t>(hypothesis.size());
  stats.ref_length = static_cast<std::int64_t>(reference.size());
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    const NgramCounts hyp = CountNgrams(hypothesis, n + 1);
    const NgramCounts ref = CountNgrams(reference, n + 1);
    for (const auto& [gram, count] : hyp) {
      stats.totals[n] += count;
      auto it = ref.find(gram);
      if (it != ref.end()) stats.matches[n] += std::min(count, it->second);
    }
  }
  return stats;
}

double CorpusBleuFromStats(const BleuStats& stats) {
  if (stats.hyp_length == 0) return 0.0;
  double log_precision = 0.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (stats.matches[n] == 0) return 0.0;
    log_precision += std::log(static_cast<double>(stats.matches[n]) /
                              static_cast<double>(stats.totals[n]));
  }
  return 100.0 * BrevityPenalty(stats) *
         std::exp(log_precision / kBleuMaxOrder);
}

double SentenceBleuFromStats(const BleuStats& stats) {
  if (stats.hyp_length == 0 || stats.ref_length == 0) return 0.0;
  if (stats.matches[0] == 0) return 0.0;
  int order = 0;
  while (order < kBleuMaxOrder && stats.totals[order] > 0) ++order;
  double smooth = 1.0;
  double log_precision = 0.0;
  for (int n = 0; n < order; ++n) {
    const double total = static_cast<double>(stats.totals[n]);
    if (stats.matches[n] == 0) {
      smooth *= 2.0;
      log_precision += std::log(1.0 / (smooth * total));
    } else {
      log_precision += std::log(static_cast<double>(stats.matches[n]) / total);
    }
  }
  return 100.0 * BrevityPenalty(stats) * std::exp(log_precision / order);
}

double SentenceBleu(std::string_view hypothesis, std::string_view reference) {
  return SentenceBleuFromStats(
      ComputeBleuStats(Tokenize(hypothesis), Tokenize(reference)));
}

double CorpusBleu(
    std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw ArgumentError("corpus BLEU of an empty corpus");
  BleuStats pooled;
  for (const auto& [hyp, ref] : pairs) {
    pooled += ComputeBleuStats(Tokenize(hyp), Tokenize(ref));
  }
  return CorpusBleuFromStats(pooled);
}

BuiltinMetric ParseBuiltinMetric(std::string_view name) {
  if (name == "bleu") return BuiltinMetric::kBleu;
  throw ArgumentError("unknown built-in metric '" + std::string(name) +
                      "' (available: bleu)");
}

std::string_view BuiltinMetricName(BuiltinMetric metric) {
  switch (metric) {
    case BuiltinMetric::kBleu:
      return "bleu";
  }
  return "?";
}

namespace {

double ScoreSegment(BuiltinMetric metric, std::string_view hypothesis,
                    std::string_view reference) {
  switch (metric) {
    case BuiltinMetric::kBleu:
      return SentenceBleu(hypothesis, reference);
  }
  return 0.0;
}

template <typename ScoreFn>
std::vector<ScoreTable> ScoreByUnit(
    BuiltinMetric metric, ScoringMode mode,
    std::span<const ParagraphInstance> paragraphs, ScoreFn score) {
  std::map<std::pair<std::string, int>, ScoreTable> tables;
  for (const ParagraphInstance& p : paragraphs) {
    auto key = std::make_pair(p.lang_pair, p.k);
    auto it = tables.find(key);
    if (it == tables.end()) {
      it = tables
               .emplace(key, ScoreTable(std::string(BuiltinMetricName(metric)),
                                        mode, p.lang_pair, p.k))
               .first;
    }
    it->second.Insert(p.system_id, p.item_key(), score(p));
  }
  std::vector<ScoreTable> out;
  for (auto& [key, table] : tables) out.push_back(std::move(table));
  return out;
}

}  // namespace

std::vector<ScoreTable> ScoreDirect(
    BuiltinMetric metric, std::span<const ParagraphInstance> paragraphs) {
  return ScoreByUnit(metric, ScoringMode::kDirect, paragraphs,
                     [metric](const ParagraphInstance& p) {
                       return ScoreSegment(metric, p.hypothesis_text,
                                           p.reference_text);
                     });
}

std::vector<ScoreTable> ScoreAlignedAvg(
    BuiltinMetric metric, std::span<const ParagraphInstance> paragraphs) {
  return ScoreByUnit(
      metric, ScoringMode::kAlignedAvg, paragraphs,
      [metric](const ParagraphInstance& p) {
        if (!p.has_alignment()) {
          throw UnsupportedError(
              "aligned scoring needs per-sentence texts, which " +
              DescribeParagraph(p) + " does not carry");
        }
        double sum = 0.0;
        for (int i = 0; i < p.k; ++i) {
          sum += ScoreSegment(metric, p.hypothesis_sentences[i],
                              p.reference_sentences[i]);
        }
        return sum / static_cast<double>(p.k);
      });
}

std::int64_t WhitespaceTokenCount(std::string_view text) {
  std::int64_t count = 0;
  bool in_token = false;
  for (char c : text) {
    if (IsAsciiSpace(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

std::int64_t CharacterCount(std::string_view text) {
  std::int64_t count = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = 0;
    pos += DecodeUtf8(text, pos, cp);
    ++count;
  }
  return count;
}

TokenCounter ParseTokenCounter(std::string_view name) {
  if (name == "whitespace") return WhitespaceTokenCount;
  if (name == "char") return CharacterCount;
  throw ArgumentError("unknown token counter '" + std::string(name) +
                      "' (available: whitespace, char)");
}

std::int64_t HypothesisTokens(const ParagraphInstance& p,
                              const TokenCounter& counter) {
  return p.token_count_hyp ? *p.token_count_hyp : counter(p.hypothesis_text);
}

std::int64_t ReferenceTokens(const ParagraphInstance& p,
                             const TokenCounter& counter) {
  return p.token_count_ref ? *p.token_count_ref : counter(p.reference_text);
}

std::int64_t NearestRank(std::vector<std::int64_t> values, double percentile) {
  if (values.empty()) throw ArgumentError("percentile of an empty sample");
  if (!(percentile > 0.0 && percentile < 100.0)) {
    throw ArgumentError("percentiles must lie in (0, 100)");
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

std::map<int, std::vector<std::int64_t>> LengthPercentiles(
    std::span<const ParagraphInstance> paragraphs, const TokenCounter& counter,
    std::span<const double> percentiles) {
  for (double p : percentiles) {
    if (!(p > 0.0 && p < 100.0)) {
      throw ArgumentError("percentiles must lie in (0, 100)");
    }
  }
  std::map<int, std::vector<std::int64_t>> lengths;
  for (const ParagraphInstance& p : paragraphs) {
    lengths[p.k].push_back(HypothesisTokens(p, counter));
  }
  std::map<int, std::vector<std::int64_t>> out;
  for (auto& [k, values] : lengths) {
    std::sort(values.begin(), values.end());
    for (double p : percentiles) out[k].push_back(NearestRank(values, p));
  }
  return out;
}

std::map<int, TruncationCount> TruncationStats(
    std::span<const ParagraphInstance> paragraphs, const TokenCounter& counter,
    std::int64_t budget) {
  if (budget < 1) throw ArgumentError("token budget must be positive");
  std::map<int, TruncationCount> out;
  for (const ParagraphInstance& p : paragraphs) {
    TruncationCount& c = out[p.k];
    ++c.total;
    if (ReferenceTokens(p, counter) + HypothesisTokens(p, counter) > budget) {
      ++c.truncated;
    }
  }
  for (auto& [k, c] : out) {
    c.fraction = static_cast<double>(c.truncated) / static_cast<double>(c.total);
  }
  return out;
}

}  // namespace paraeval
