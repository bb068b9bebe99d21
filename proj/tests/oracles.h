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

#ifndef PARAEVAL_TESTS_ORACLES_H_
#define PARAEVAL_TESTS_ORACLES_H_

// Deliberately naive reference implementations. None of these call into
// the library; they restate each definition in the most direct form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "model.h"

namespace paraeval::oracle {

// ---- Paragraph construction ------------------------------------------------

struct Window {
  std::int64_t start = 0;
  std::string rater;
  std::vector<double> scores;
  std::string hypothesis;

  bool operator==(const Window&) const = default;
};

// One (system, doc) layout. raters[i] is empty when position i is unrated.
// run[i] is the length of the same-rater run beginning at i; the scan then
// takes any i with run[i] >= k and skips past it.
inline std::vector<Window> GreedyWindows(
    const std::vector<std::string>& raters, const std::vector<double>& scores,
    const std::vector<std::string>& texts, int k) {
  const std::size_t n = raters.size();
  std::vector<std::size_t> run(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (raters[i].empty()) {
      run[i] = 0;
    } else if (i + 1 < n && raters[i + 1] == raters[i]) {
      run[i] = run[i + 1] + 1;
    } else {
      run[i] = 1;
    }
  }
  std::vector<Window> out;
  std::size_t i = 0;
  const std::size_t width = static_cast<std::size_t>(k);
  while (i + width <= n) {
    if (run[i] >= width) {
      Window w;
      w.start = static_cast<std::int64_t>(i);
      w.rater = raters[i];
      for (std::size_t j = i; j < i + width; ++j) {
        w.scores.push_back(scores[j]);
        if (j > i) w.hypothesis += " ";
        w.hypothesis += texts[j];
      }
      out.push_back(std::move(w));
      i += width;
    } else {
      ++i;
    }
  }
  return out;
}

// ---- BLEU ------------------------------------------------------------------

using Tokens = std::vector<std::string>;

inline Tokens Gram(const Tokens& t, std::size_t at, std::size_t n) {
  return Tokens(t.begin() + static_cast<std::ptrdiff_t>(at),
                t.begin() + static_cast<std::ptrdiff_t>(at + n));
}

inline std::size_t Occurrences(const Tokens& text, const Tokens& gram) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + gram.size() <= text.size(); ++i) {
    if (Gram(text, i, gram.size()) == gram) ++count;
  }
  return count;
}

struct NgramCounts {
  double matches[4] = {0, 0, 0, 0};
  double totals[4] = {0, 0, 0, 0};
  double hyp_len = 0;
  double ref_len = 0;
};

// Clipped matches by scanning: each distinct hypothesis n-gram is counted in
// both texts by brute force.
inline NgramCounts Count(const Tokens& hyp, const Tokens& ref) {
  NgramCounts c;
  c.hyp_len = static_cast<double>(hyp.size());
  c.ref_len = static_cast<double>(ref.size());
  for (std::size_t n = 1; n <= 4; ++n) {
    if (hyp.size() < n) continue;
    c.totals[n - 1] = static_cast<double>(hyp.size() - n + 1);
    std::vector<Tokens> seen;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
      Tokens g = Gram(hyp, i, n);
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
      c.matches[n - 1] += static_cast<double>(
          std::min(Occurrences(hyp, g), Occurrences(ref, g)));
      seen.push_back(std::move(g));
    }
  }
  return c;
}

inline double BrevityPenalty(double c, double r) {
  if (c >= r) return 1.0;
  if (c == 0) return 0.0;
  return std::exp(1.0 - r / c);
}

// Unsmoothed, pooled over the corpus.
inline double CorpusBleu(const std::vector<std::pair<Tokens, Tokens>>& pairs) {
  NgramCounts pooled;
  for (const auto& [hyp, ref] : pairs) {
    const NgramCounts c = Count(hyp, ref);
    for (int n = 0; n < 4; ++n) {
      pooled.matches[n] += c.matches[n];
      pooled.totals[n] += c.totals[n];
    }
    pooled.hyp_len += c.hyp_len;
    pooled.ref_len += c.ref_len;
  }
  double product = 1.0;
  for (int n = 0; n < 4; ++n) {
    if (pooled.matches[n] == 0) return 0.0;
    product *= pooled.matches[n] / pooled.totals[n];
  }
  return 100.0 * BrevityPenalty(pooled.hyp_len, pooled.ref_len) *
         std::pow(product, 0.25);
}

// Exponentially smoothed, over the orders the hypothesis is long enough for.
inline double SentenceBleu(const Tokens& hyp, const Tokens& ref) {
  if (hyp.empty() || ref.empty()) return 0.0;
  const NgramCounts c = Count(hyp, ref);
  if (c.matches[0] == 0) return 0.0;
  const int orders = static_cast<int>(std::min<std::size_t>(4, hyp.size()));
  double product = 1.0;
  double zeros = 0;
  for (int n = 0; n < orders; ++n) {
    if (c.matches[n] == 0) {
      zeros += 1;
      product *= 1.0 / (std::pow(2.0, zeros) * c.totals[n]);
    } else {
      product *= c.matches[n] / c.totals[n];
    }
  }
  return 100.0 * BrevityPenalty(c.hyp_len, c.ref_len) *
         std::pow(product, 1.0 / orders);
}

// ---- Pairwise accuracy -----------------------------------------------------

inline int Relation(double a, double b, double epsilon) {
  if (std::fabs(a - b) <= epsilon) return 0;
  return a > b ? 1 : -1;
}

// Enumerates every pair of every item. Human ties are exact equality.
inline double SegmentAccuracy(const std::vector<EvalItem>& items,
                              double epsilon) {
  double sum = 0.0;
  int used = 0;
  for (const EvalItem& item : items) {
    std::vector<std::pair<double, double>> s;
    for (const auto& [name, score] : item.per_system) {
      if (score.metric) s.emplace_back(*score.metric, score.human);
    }
    if (s.size() < 2) continue;
    std::int64_t correct = 0;
    std::int64_t pairs = 0;
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = 0; b < s.size(); ++b) {
        if (b <= a) continue;
        ++pairs;
        const int m = Relation(s[a].first, s[b].first, epsilon);
        const int h = Relation(s[a].second, s[b].second, 0.0);
        if (m == h) ++correct;
      }
    }
    sum += static_cast<double>(correct) / static_cast<double>(pairs);
    ++used;
  }
  return sum / used;
}

// Tries every candidate threshold with the enumerating oracle above.
inline std::pair<double, double> TauSweep(const std::vector<EvalItem>& items) {
  std::vector<double> candidates{0.0};
  for (const EvalItem& item : items) {
    std::vector<double> m;
    for (const auto& [name, score] : item.per_system) {
      if (score.metric) m.push_back(*score.metric);
    }
    if (m.size() < 2) continue;
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        candidates.push_back(std::fabs(m[a] - m[b]));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  double best_eps = 0.0;
  double best = -1.0;
  for (double eps : candidates) {
    const double acc = SegmentAccuracy(items, eps);
    if (acc > best) {
      best = acc;
      best_eps = eps;
    }
  }
  return {best_eps, best};
}

}  // namespace paraeval::oracle

#endif  // PARAEVAL_TESTS_ORACLES_H_
