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

#include "metaeval.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "errors.h"

namespace paraeval {

std::map<std::string, double> SystemScores(const ScoreTable& table) {
  std::map<std::string, std::pair<double, std::int64_t>> sums;
  for (const auto& [key, score] : table.entries()) {
    auto& [sum, count] = sums[key.system_id];
    sum += score;
    ++count;
  }
  std::map<std::string, double> out;
  for (const auto& [system, sc] : sums) {
    out[system] = sc.first / static_cast<double>(sc.second);
  }
  return out;
}

namespace {

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

// Scored systems of one item as (metric, human) pairs, in system order.
using ScoredItem = std::vector<std::pair<double, double>>;

std::vector<ScoredItem> ScoredItems(std::span<const EvalItem> items) {
  std::vector<ScoredItem> out;
  for (const EvalItem& item : items) {
    ScoredItem scored;
    for (const auto& [system, s] : item.per_system) {
      if (s.metric) scored.emplace_back(*s.metric, s.human);
    }
    if (scored.size() >= 2) out.push_back(std::move(scored));
  }
  if (out.empty()) {
    throw DataError("no item has at least two systems with metric scores");
  }
  return out;
}

std::int64_t PairCount(std::size_t n) {
  return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
}

// Unweighted mean of per-item accuracies, summed in item order.
double MeanItemAccuracy(const std::vector<ScoredItem>& items,
                        const std::vector<std::int64_t>& correct) {
  double sum = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    sum += static_cast<double>(correct[i]) /
           static_cast<double>(PairCount(items[i].size()));
  }
  return sum / static_cast<double>(items.size());
}

bool PairCorrect(const std::pair<double, double>& a,
                 const std::pair<double, double>& b, double epsilon) {
  const double metric_delta = a.first - b.first;
  const int metric_relation =
      std::abs(metric_delta) <= epsilon ? 0 : Sign(metric_delta);
  const int human_relation = a.second == b.second ? 0 : Sign(a.second - b.second);
  return metric_relation == human_relation;
}

}  // namespace

double SystemPairwiseAccuracy(const std::map<std::string, double>& metric,
                              const std::map<std::string, double>& human) {
  if (metric.size() < 2) {
    throw ArgumentError("system-level accuracy needs at least two systems");
  }
  if (metric.size() != human.size() ||
      !std::equal(metric.begin(), metric.end(), human.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw ArgumentError("metric and human system sets differ");
  }
  std::vector<std::pair<double, double>> scores;
  for (const auto& [system, m] : metric) {
    scores.emplace_back(m, human.at(system));
  }
  std::int64_t agree = 0;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    for (std::size_t j = i + 1; j < scores.size(); ++j) {
      if (scores[i].second == scores[j].second) continue;
      ++total;
      if (Sign(scores[i].first - scores[j].first) ==
          Sign(scores[i].second - scores[j].second)) {
        ++agree;
      }
    }
  }
  if (total == 0) {
    throw DataError("every system pair is tied in the human scores");
  }
  return static_cast<double>(agree) / static_cast<double>(total);
}

double SegmentAccuracy(std::span<const EvalItem> items, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("epsilon must be non-negative");
  const std::vector<ScoredItem> scored = ScoredItems(items);
  std::vector<std::int64_t> correct(scored.size(), 0);
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const ScoredItem& item = scored[i];
    for (std::size_t a = 0; a < item.size(); ++a) {
      for (std::size_t b = a + 1; b < item.size(); ++b) {
        if (PairCorrect(item[a], item[b], epsilon)) ++correct[i];
      }
    }
  }
  return MeanItemAccuracy(scored, correct);
}

TauCalibration TauOptimize(std::span<const EvalItem> items) {
  const std::vector<ScoredItem> scored = ScoredItems(items);

  struct Pair {
    double distance;
    std::size_t item;
    bool human_tie;
    bool sign_agrees;
  };
  std::vector<Pair> pairs;
  // Correct counts when no pair is predicted as a tie.
  std::vector<std::int64_t> correct(scored.size(), 0);
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const ScoredItem& item = scored[i];
    for (std::size_t a = 0; a < item.size(); ++a) {
      for (std::size_t b = a + 1; b < item.size(); ++b) {
        const double metric_delta = item[a].first - item[b].first;
        const bool human_tie = item[a].second == item[b].second;
        const bool sign_agrees =
            !human_tie && metric_delta != 0.0 &&
            Sign(metric_delta) == Sign(item[a].second - item[b].second);
        pairs.push_back({std::abs(metric_delta), i, human_tie, sign_agrees});
        if (sign_agrees) ++correct[i];
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& x, const Pair& y) { return x.distance < y.distance; });

  std::vector<double> candidates{0.0};
  for (const Pair& p : pairs) {
    if (p.distance > candidates.back()) candidates.push_back(p.distance);
  }

  TauCalibration best{0.0, -1.0};
  std::size_t next = 0;
  for (double epsilon : candidates) {
    // Pairs within epsilon switch from a sign prediction to a tie.
    while (next < pairs.size() && pairs[next].distance <= epsilon) {
      const Pair& p = pairs[next++];
      correct[p.item] += static_cast<std::int64_t>(p.human_tie) -
                         static_cast<std::int64_t>(p.sign_agrees);
    }
    const double accuracy = MeanItemAccuracy(scored, correct);
    if (accuracy > best.accuracy_at_epsilon) {
      best = {epsilon, accuracy};
    }
  }
  return best;
}

double PearsonNoGrouping(std::span<const double> metric,
                         std::span<const double> human) {
  if (metric.size() != human.size()) {
    throw ArgumentError("Pearson inputs differ in length");
  }
  if (metric.size() < 2) {
    throw ArgumentError("Pearson needs at least two observations");
  }
  const double n = static_cast<double>(metric.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    mean_x += metric[i];
    mean_y += human[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    const double dx = metric[i] - mean_x;
    const double dy = human[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DataError("undefined correlation: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double TieRate(std::span<const EvalItem> items, ScoreSource source) {
  std::int64_t ties = 0;
  std::int64_t total = 0;
  std::vector<double> values;
  for (const EvalItem& item : items) {
    values.clear();
    for (const auto& [system, s] : item.per_system) {
      if (source == ScoreSource::kHuman) {
        values.push_back(s.human);
      } else if (s.metric) {
        values.push_back(*s.metric);
      }
    }
    if (values.size() < 2) continue;
    for (std::size_t a = 0; a < values.size(); ++a) {
      for (std::size_t b = a + 1; b < values.size(); ++b) {
        ++total;
        if (values[a] == values[b]) ++ties;
      }
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(ties) / static_cast<double>(total);
}

double ModeCorrelation(const ScoreTable& direct, const ScoreTable& aligned) {
  std::vector<std::string> missing;
  auto describe = [](const SystemItemKey& key) {
    return key.system_id + " " + ToString(key.item);
  };
  for (const auto& [key, score] : direct.entries()) {
    if (!aligned.entries().contains(key)) {
      missing.push_back("missing from aligned: " + describe(key));
    }
  }
  for (const auto& [key, score] : aligned.entries()) {
    if (!direct.entries().contains(key)) {
      missing.push_back("missing from direct: " + describe(key));
    }
  }
  if (!missing.empty()) {
    std::string message = "score tables have different keys:";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) message += "\n  " + missing[i];
    if (missing.size() > shown) {
      message += "\n  ... and " + std::to_string(missing.size() - shown) +
                 " more";
    }
    throw DataError(message);
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [key, score] : direct.entries()) {
    x.push_back(score);
    y.push_back(aligned.entries().at(key));
  }
  return PearsonNoGrouping(x, y);
}

}  // namespace paraeval
