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

#ifndef PARAEVAL_SIM_H_
#define PARAEVAL_SIM_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "model.h"

namespace paraeval {

// Synthetic evaluation unit for paragraphs of k sentences.
struct SimUnit {
  int k = 0;
  std::vector<EvalItem> items;
};

// Draws system means mu_s ~ Normal(0, system_mean_spread), then for every
// (item, system, sentence) a true quality q = mu_s + Normal(0, sigma_quality)
// with human h = q + Normal(0, sigma_human) and metric
// m = q + Normal(0, sigma_metric). Each item holds max_k sentences per
// system; the unit for k scores each item by the means over its first k
// sentences. Returns units for k = 1..max_k. Draw order is fixed, so the
// result is a pure function of the config.
std::vector<SimUnit> Simulate(const SimConfig& config);

struct NoiseCurvePoint {
  int k = 0;
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;
  // Segment accuracy (epsilon 0) per seed, in seed order.
  std::vector<double> per_seed;
};

// Runs Simulate for n_seeds seeds derived from config.seed and reports the
// segment accuracy per k across seeds (sample standard deviation). Needs at
// least two distinct k values, all within [1, max_k]. Seeds are spread over
// up to `threads` workers; results do not depend on the thread count.
std::vector<NoiseCurvePoint> NoiseCurve(const SimConfig& config,
                                        std::span<const int> ks, int n_seeds,
                                        int threads = 1);

// Parses a flat "key = value" document with the SimConfig field names.
// '#' starts a comment. Unknown keys and malformed values throw
// ArgumentError; missing keys keep their defaults.
SimConfig ParseSimConfig(std::string_view text);

}  // namespace paraeval

#endif  // PARAEVAL_SIM_H_
