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

#include "pipeline.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "errors.h"
#include "ingest.h"
#include "metaeval.h"
#include "metrics.h"
#include "parabuild.h"
#include "parallel.h"
#include "rng.h"
#include "sim.h"

namespace paraeval {

namespace {

constexpr char kNone[] = "-";

ReportRow Row(const UnitKey& unit, std::string metric, std::string mode,
              std::string statistic, double value,
              std::optional<double> epsilon = std::nullopt) {
  return ReportRow{unit.dataset_id, unit.lang_pair, unit.k,
                   std::move(metric), std::move(mode), std::move(statistic),
                   value, epsilon};
}

std::string UnitName(const UnitKey& unit) {
  return unit.dataset_id + "/" + unit.lang_pair + "/k=" + std::to_string(unit.k);
}

// Tables sharing the unit's (lang_pair, k).
std::vector<const ScoreTable*> TablesFor(const UnitKey& unit,
                                         std::span<const ScoreTable> tables) {
  std::vector<const ScoreTable*> out;
  for (const ScoreTable& t : tables) {
    if (t.lang_pair() == unit.lang_pair && t.k() == unit.k) out.push_back(&t);
  }
  return out;
}

struct Task {
  const UnitKey* unit;
  const std::vector<ParagraphInstance>* paragraphs;
  const ScoreTable* table;
};

std::vector<EvalItem> ItemsWithMetric(
    const std::vector<ParagraphInstance>& paragraphs, const ScoreTable& table) {
  std::vector<EvalItem> items = BuildEvalItems(paragraphs, paragraphs.front().k);
  for (EvalItem& item : items) {
    for (auto& [system, scores] : item.per_system) {
      scores.metric = table.Find(system, item.key);
    }
  }
  return items;
}

// Number of items with at least two metric-scored systems.
std::size_t ScoredItemCount(std::span<const EvalItem> items) {
  std::size_t count = 0;
  for (const EvalItem& item : items) {
    std::size_t scored = 0;
    for (const auto& [system, s] : item.per_system) scored += s.metric ? 1 : 0;
    if (scored >= 2) ++count;
  }
  return count;
}

Report SegmentRows(const Task& task, std::vector<EvalItem> items,
                   const MetaEvalOptions& options) {
  Report report;
  const UnitKey& unit = *task.unit;
  const std::string metric = task.table->metric_name();
  const std::string mode(ScoringModeName(task.table->mode()));
  if (ScoredItemCount(items) == 0) {
    report.warnings.push_back(UnitName(unit) + " " + metric +
                              ": no item with two scored systems, segment "
                              "level skipped");
    return report;
  }
  report.rows.push_back(Row(unit, metric, mode, "segment_accuracy",
                            SegmentAccuracy(items, 0.0), 0.0));
  if (!options.tau_optimize) return report;

  if (options.calibration_fraction <= 0.0) {
    const TauCalibration tau = TauOptimize(items);
    report.rows.push_back(Row(unit, metric, mode, "segment_accuracy_tau",
                              tau.accuracy_at_epsilon, tau.epsilon));
    return report;
  }
  // Held-out split over the canonical item order.
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(options.calibration_seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.Below(i)]);
  }
  const auto n_calib = static_cast<std::size_t>(
      options.calibration_fraction * static_cast<double>(items.size()) + 0.5);
  std::vector<EvalItem> calib;
  std::vector<EvalItem> held_out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_calib ? calib : held_out).push_back(items[order[i]]);
  }
  if (ScoredItemCount(calib) == 0 || ScoredItemCount(held_out) == 0) {
    report.warnings.push_back(UnitName(unit) + " " + metric +
                              ": calibration split leaves an empty side, "
                              "tau optimization skipped");
    return report;
  }
  const TauCalibration tau = TauOptimize(calib);
  report.rows.push_back(Row(unit, metric, mode, "segment_accuracy_tau",
                            SegmentAccuracy(held_out, tau.epsilon),
                            tau.epsilon));
  return report;
}

Report MetaEvalTask(const Task& task, const MetaEvalOptions& options) {
  Report report;
  const UnitKey& unit = *task.unit;
  const ScoreTable& table = *task.table;
  const std::string metric = table.metric_name();
  const std::string mode(ScoringModeName(table.mode()));

  std::vector<double> metric_scores;
  std::vector<double> human_scores;
  std::map<std::string, std::pair<double, int>> metric_sys;
  std::map<std::string, std::pair<double, int>> human_sys;
  for (const ParagraphInstance& p : *task.paragraphs) {
    const auto score = table.Find(p.system_id, p.item_key());
    if (!score) continue;
    metric_scores.push_back(*score);
    human_scores.push_back(p.human_score);
    auto& m = metric_sys[p.system_id];
    m.first += *score;
    ++m.second;
    auto& h = human_sys[p.system_id];
    h.first += p.human_score;
    ++h.second;
  }
  if (metric_scores.empty()) return report;

  if (options.system_level) {
    std::map<std::string, double> metric_means;
    std::map<std::string, double> human_means;
    for (const auto& [system, sc] : metric_sys) {
      metric_means[system] = sc.first / sc.second;
    }
    for (const auto& [system, sc] : human_sys) {
      human_means[system] = sc.first / sc.second;
    }
    if (metric_means.size() < 2) {
      report.warnings.push_back(UnitName(unit) + " " + metric +
                                ": fewer than two systems, system level "
                                "skipped");
    } else {
      try {
        report.rows.push_back(
            Row(unit, metric, mode, "system_accuracy",
                SystemPairwiseAccuracy(metric_means, human_means)));
      } catch (const DataError& e) {
        report.warnings.push_back(UnitName(unit) + " " + metric + ": " +
                                  e.what() + ", system level skipped");
      }
    }
  }

  std::vector<EvalItem> items;
  if (options.segment_level || options.ties) {
    items = ItemsWithMetric(*task.paragraphs, table);
  }
  if (options.segment_level) {
    report.Append(SegmentRows(task, items, options));
  }
  if (options.pearson) {
    try {
      report.rows.push_back(Row(unit, metric, mode, "pearson_no_grouping",
                                PearsonNoGrouping(metric_scores, human_scores)));
    } catch (const std::exception& e) {
      report.warnings.push_back(UnitName(unit) + " " + metric + ": " +
                                e.what() + ", Pearson skipped");
    }
  }
  if (options.ties) {
    // Human ties over the same scored pairs the metric is judged on.
    std::vector<EvalItem> scored = items;
    for (EvalItem& item : scored) {
      std::erase_if(item.per_system,
                    [](const auto& entry) { return !entry.second.metric; });
    }
    report.rows.push_back(Row(unit, metric, mode, "tie_rate_human",
                              TieRate(scored, ScoreSource::kHuman)));
    report.rows.push_back(Row(unit, metric, mode, "tie_rate_metric",
                              TieRate(items, ScoreSource::kMetric)));
  }
  return report;
}

template <typename Fn>
Report RunTasks(std::size_t n, int threads, Fn&& fn) {
  std::vector<Report> parts(n);
  ParallelFor(n, threads, [&](std::size_t i) { parts[i] = fn(i); });
  Report out;
  for (Report& part : parts) out.Append(std::move(part));
  return out;
}

}  // namespace

std::map<UnitKey, std::vector<ParagraphInstance>> GroupByUnit(
    std::span<const ParagraphInstance> paragraphs) {
  std::map<UnitKey, std::vector<ParagraphInstance>> units;
  for (const ParagraphInstance& p : paragraphs) {
    units[UnitKey{p.dataset_id, p.lang_pair, p.k}].push_back(p);
  }
  for (auto& [unit, list] : units) {
    std::stable_sort(list.begin(), list.end(), CanonicalLess);
  }
  return units;
}

std::vector<std::vector<ParagraphInstance>> BuildParagraphsForKs(
    std::span<const RatingRecord> records, std::span<const int> ks,
    int threads) {
  std::vector<std::vector<ParagraphInstance>> out(ks.size());
  ParallelFor(ks.size(), threads,
              [&](std::size_t i) { out[i] = BuildParagraphs(records, ks[i]); });
  return out;
}

Report ParagraphCountReport(std::span<const ParagraphInstance> paragraphs) {
  std::map<UnitKey, std::int64_t> counts;
  for (const ParagraphInstance& p : paragraphs) {
    ++counts[UnitKey{p.dataset_id, p.lang_pair, p.k}];
  }
  Report report;
  for (const auto& [unit, count] : counts) {
    report.rows.push_back(Row(unit, kNone, kNone, "paragraph_count",
                              static_cast<double>(count)));
  }
  return report;
}

Report RunMetaEval(std::span<const ParagraphInstance> paragraphs,
                   std::span<const ScoreTable> tables,
                   const MetaEvalOptions& options) {
  if (options.calibration_fraction < 0.0 ||
      options.calibration_fraction >= 1.0) {
    throw ArgumentError("calibration fraction must lie in [0, 1)");
  }
  const auto units = GroupByUnit(paragraphs);
  std::vector<Task> tasks;
  std::set<const ScoreTable*> used;
  for (const auto& [unit, list] : units) {
    for (const ScoreTable* table : TablesFor(unit, tables)) {
      tasks.push_back(Task{&unit, &list, table});
      used.insert(table);
    }
  }
  Report report = RunTasks(tasks.size(), options.threads, [&](std::size_t i) {
    return MetaEvalTask(tasks[i], options);
  });
  for (const ScoreTable& t : tables) {
    if (!used.contains(&t)) {
      report.warnings.push_back("scores for " + t.metric_name() + " " +
                                t.lang_pair() + " k=" + std::to_string(t.k()) +
                                " match no paragraphs");
    }
  }
  return report;
}

Report RunTieReport(std::span<const ParagraphInstance> paragraphs,
                    std::span<const ScoreTable> tables, int threads) {
  const auto units = GroupByUnit(paragraphs);
  std::vector<std::pair<const UnitKey*, const std::vector<ParagraphInstance>*>>
      list;
  for (const auto& [unit, ps] : units) list.emplace_back(&unit, &ps);
  return RunTasks(list.size(), threads, [&](std::size_t i) {
    const UnitKey& unit = *list[i].first;
    const auto& ps = *list[i].second;
    Report report;
    const std::vector<EvalItem> items = BuildEvalItems(ps, unit.k);
    report.rows.push_back(Row(unit, kNone, kNone, "tie_rate_human",
                              TieRate(items, ScoreSource::kHuman)));
    for (const ScoreTable* table : TablesFor(unit, tables)) {
      report.rows.push_back(
          Row(unit, table->metric_name(),
              std::string(ScoringModeName(table->mode())), "tie_rate_metric",
              TieRate(ItemsWithMetric(ps, *table), ScoreSource::kMetric)));
    }
    return report;
  });
}

Report RunCompareModes(std::span<const ParagraphInstance> paragraphs,
                       std::span<const ScoreTable> direct,
                       std::span<const ScoreTable> aligned, int threads) {
  const auto units = GroupByUnit(paragraphs);
  struct Pairing {
    const UnitKey* unit;
    const std::vector<ParagraphInstance>* paragraphs;
    const ScoreTable* direct;
    const ScoreTable* aligned;
  };
  std::vector<Pairing> pairings;
  Report report;
  for (const auto& [unit, ps] : units) {
    for (const ScoreTable* d : TablesFor(unit, direct)) {
      const ScoreTable* match = nullptr;
      for (const ScoreTable* a : TablesFor(unit, aligned)) {
        if (a->metric_name() == d->metric_name()) match = a;
      }
      if (match == nullptr) {
        report.warnings.push_back(UnitName(unit) + " " + d->metric_name() +
                                  ": no aligned scores to compare with");
        continue;
      }
      pairings.push_back(Pairing{&unit, &ps, d, match});
    }
  }
  report.Append(RunTasks(pairings.size(), threads, [&](std::size_t i) {
    const Pairing& pairing = pairings[i];
    // Restrict both tables to the unit's paragraphs.
    ScoreTable d(pairing.direct->metric_name(), ScoringMode::kDirect,
                 pairing.unit->lang_pair, pairing.unit->k);
    ScoreTable a(pairing.aligned->metric_name(), ScoringMode::kAlignedAvg,
                 pairing.unit->lang_pair, pairing.unit->k);
    for (const ParagraphInstance& p : *pairing.paragraphs) {
      if (auto s = pairing.direct->Find(p.system_id, p.item_key())) {
        d.Insert(p.system_id, p.item_key(), *s);
      }
      if (auto s = pairing.aligned->Find(p.system_id, p.item_key())) {
        a.Insert(p.system_id, p.item_key(), *s);
      }
    }
    Report part;
    if (d.empty() && a.empty()) return part;
    try {
      part.rows.push_back(Row(*pairing.unit, d.metric_name(),
                              "direct-vs-aligned", "mode_correlation",
                              ModeCorrelation(d, a)));
    } catch (const DataError& e) {
      part.warnings.push_back(UnitName(*pairing.unit) + " " + d.metric_name() +
                              ": " + e.what());
    }
    return part;
  }));
  return report;
}

Report RunStats(std::span<const ParagraphInstance> paragraphs,
                const StatsOptions& options) {
  const TokenCounter counter = ParseTokenCounter(options.counter);
  if (options.truncation && options.budget < 1) {
    throw ArgumentError("token budget must be positive");
  }
  for (double p : options.percentiles) {
    if (!(p > 0.0 && p < 100.0)) {
      throw ArgumentError("percentiles must lie in (0, 100)");
    }
  }
  const auto units = GroupByUnit(paragraphs);
  std::vector<std::pair<const UnitKey*, const std::vector<ParagraphInstance>*>>
      list;
  for (const auto& [unit, ps] : units) list.emplace_back(&unit, &ps);
  const std::string counter_name = "tokens:" + options.counter;
  return RunTasks(list.size(), options.threads, [&](std::size_t i) {
    const UnitKey& unit = *list[i].first;
    const auto& ps = *list[i].second;
    Report report;
    report.rows.push_back(Row(unit, kNone, kNone, "paragraph_count",
                              static_cast<double>(ps.size())));
    if (options.lengths) {
      const auto table = LengthPercentiles(ps, counter, options.percentiles);
      const auto& values = table.at(unit.k);
      for (std::size_t j = 0; j < options.percentiles.size(); ++j) {
        report.rows.push_back(
            Row(unit, counter_name, kNone,
                "length_p" + FormatDouble(options.percentiles[j]),
                static_cast<double>(values[j])));
      }
    }
    if (options.truncation) {
      const TruncationCount c =
          TruncationStats(ps, counter, options.budget).at(unit.k);
      const std::string suffix = "_" + std::to_string(options.budget);
      report.rows.push_back(Row(unit, counter_name, kNone,
                                "truncated_count" + suffix,
                                static_cast<double>(c.truncated)));
      report.rows.push_back(Row(unit, counter_name, kNone,
                                "truncated_fraction" + suffix, c.fraction));
    }
    return report;
  });
}

Report RunSimulation(const SimConfig& config, std::span<const int> ks,
                     int n_seeds, int threads) {
  const std::vector<NoiseCurvePoint> curve =
      NoiseCurve(config, ks, n_seeds, threads);
  Report report;
  for (const NoiseCurvePoint& point : curve) {
    const UnitKey unit{"sim", "sim", point.k};
    report.rows.push_back(Row(unit, "sim", kNone, "segment_accuracy_mean",
                              point.mean_accuracy, 0.0));
    report.rows.push_back(Row(unit, "sim", kNone, "segment_accuracy_sd",
                              point.stddev_accuracy, 0.0));
  }
  return report;
}

namespace {

int ParsePositive(std::string_view text, const std::string& whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw ArgumentError("invalid k list '" + whole +
                        "': expected positive integers, ranges a-b or a..b");
  }
  return value;
}

}  // namespace

std::vector<int> ParseKList(const std::string& text) {
  std::vector<int> out;
  std::string_view rest = text;
  if (rest.empty()) throw ArgumentError("empty k list");
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view part = rest.substr(0, comma);
    std::size_t sep = part.find("..");
    std::size_t sep_len = 2;
    if (sep == std::string_view::npos) {
      sep = part.find('-');
      sep_len = 1;
    }
    if (sep == std::string_view::npos) {
      out.push_back(ParsePositive(part, text));
    } else {
      const int lo = ParsePositive(part.substr(0, sep), text);
      const int hi = ParsePositive(part.substr(sep + sep_len), text);
      if (lo > hi) throw ArgumentError("invalid k range '" + std::string(part) + "'");
      for (int k = lo; k <= hi; ++k) out.push_back(k);
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  std::set<int> seen;
  for (int k : out) {
    if (!seen.insert(k).second) {
      throw ArgumentError("k=" + std::to_string(k) + " listed twice");
    }
  }
  return out;
}

}  // namespace paraeval
