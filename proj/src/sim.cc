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

#include "sim.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "errors.h"
#include "io.h"
#include "metaeval.h"
#include "parallel.h"
#include "rng.h"

namespace paraeval {

std::vector<SimUnit> Simulate(const SimConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  const int systems = config.n_systems;
  const int items = config.n_items;
  const int max_k = config.max_k;

  std::vector<double> system_means(systems);
  for (double& mu : system_means) mu = rng.Normal(0.0, config.system_mean_spread);

  std::vector<std::string> system_ids;
  for (int s = 0; s < systems; ++s) {
    char id[16];
    std::snprintf(id, sizeof(id), "sys%03d", s);
    system_ids.emplace_back(id);
  }

  std::vector<SimUnit> units(max_k);
  for (int k = 1; k <= max_k; ++k) {
    units[k - 1].k = k;
    units[k - 1].items.resize(items);
    for (int item = 0; item < items; ++item) {
      units[k - 1].items[item].key =
          ItemKey{"item" + std::to_string(item), 0, k};
    }
  }
  // Running sums over the first k sentences.
  for (int item = 0; item < items; ++item) {
    for (int s = 0; s < systems; ++s) {
      double human_sum = 0.0;
      double metric_sum = 0.0;
      for (int sentence = 0; sentence < max_k; ++sentence) {
        const double quality =
            system_means[s] + rng.Normal(0.0, config.sigma_quality);
        human_sum += quality + rng.Normal(0.0, config.sigma_human);
        metric_sum += quality + rng.Normal(0.0, config.sigma_metric);
        const int k = sentence + 1;
        units[k - 1].items[item].per_system[system_ids[s]] =
            PairedScore{metric_sum / k, human_sum / k};
      }
    }
  }
  return units;
}

std::vector<NoiseCurvePoint> NoiseCurve(const SimConfig& config,
                                        std::span<const int> ks, int n_seeds,
                                        int threads) {
  config.Validate();
  const std::set<int> distinct(ks.begin(), ks.end());
  if (distinct.size() < 2) {
    throw ArgumentError("a noise curve needs at least two distinct k values");
  }
  for (int k : ks) {
    if (k < 1 || k > config.max_k) {
      throw ArgumentError("k=" + std::to_string(k) + " outside [1, max_k=" +
                          std::to_string(config.max_k) + "]");
    }
  }
  if (n_seeds < 1) throw ArgumentError("need at least one seed");

  // accuracy[seed][i] for ks[i].
  std::vector<std::vector<double>> accuracy(n_seeds);
  ParallelFor(static_cast<std::size_t>(n_seeds), threads, [&](std::size_t i) {
    SimConfig run = config;
    run.seed = DeriveSeed(config.seed, i);
    const std::vector<SimUnit> units = Simulate(run);
    for (int k : ks) {
      accuracy[i].push_back(SegmentAccuracy(units[k - 1].items, 0.0));
    }
  });

  std::vector<NoiseCurvePoint> curve;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    NoiseCurvePoint point;
    point.k = ks[j];
    for (int i = 0; i < n_seeds; ++i) point.per_seed.push_back(accuracy[i][j]);
    double sum = 0.0;
    for (double a : point.per_seed) sum += a;
    point.mean_accuracy = sum / n_seeds;
    if (n_seeds > 1) {
      double ss = 0.0;
      for (double a : point.per_seed) {
        ss += (a - point.mean_accuracy) * (a - point.mean_accuracy);
      }
      point.stddev_accuracy = std::sqrt(ss / (n_seeds - 1));
    }
    curve.push_back(std::move(point));
  }
  return curve;
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseValue(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ArgumentError("invalid value for " + std::string(key) + ": '" +
                        std::string(text) + "'");
  }
  return value;
}

}  // namespace

SimConfig ParseSimConfig(std::string_view text) {
  SimConfig config;
  std::set<std::string> seen;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find_first_of("=:");
    if (eq == std::string_view::npos) {
      throw ArgumentError("config line " + std::to_string(i + 1) +
                          ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ArgumentError("config key repeated: " + key);
    }
    if (key == "n_items") {
      config.n_items = ParseValue<int>(key, value);
    } else if (key == "n_systems") {
      config.n_systems = ParseValue<int>(key, value);
    } else if (key == "max_k") {
      config.max_k = ParseValue<int>(key, value);
    } else if (key == "sigma_quality") {
      config.sigma_quality = ParseValue<double>(key, value);
    } else if (key == "sigma_human") {
      config.sigma_human = ParseValue<double>(key, value);
    } else if (key == "sigma_metric") {
      config.sigma_metric = ParseValue<double>(key, value);
    } else if (key == "system_mean_spread") {
      config.system_mean_spread = ParseValue<double>(key, value);
    } else if (key == "seed") {
      config.seed = ParseValue<std::uint64_t>(key, value);
    } else {
      throw ArgumentError("unknown config key: " + key);
    }
  }
  config.Validate();
  return config;
}

}  // namespace paraeval
