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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.h"
#include "metaeval.h"
#include "rng.h"
#include "sim.h"

namespace paraeval {
namespace {

TEST_CASE("rng is reproducible and in range") {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(c.Below(7) < 7);
    const double u = c.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(DeriveSeed(5, 0) != DeriveSeed(5, 1));
  CHECK(DeriveSeed(5, 1) != DeriveSeed(6, 1));
}

TEST_CASE("first draws are pinned") {
  // std::mt19937_64 is fully specified, so these hold on every platform.
  Rng rng(0);
  const std::uint64_t first = rng.NextU64();
  Rng again(0);
  CHECK(again.NextU64() == first);
  CHECK(SplitMix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("normal draws have unit variance") {
  Rng rng(17);
  double sum = 0.0;
  double squares = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    squares += x * x;
  }
  const double mean = sum / n;
  CHECK(std::fabs(mean) < 0.01);
  CHECK(std::fabs(squares / n - mean * mean - 1.0) < 0.02);
}

SimConfig Small() {
  SimConfig config;
  config.n_items = 40;
  config.n_systems = 4;
  config.max_k = 5;
  config.seed = 3;
  return config;
}

TEST_CASE("simulate is deterministic and shaped by the config") {
  const auto a = Simulate(Small());
  const auto b = Simulate(Small());
  REQUIRE(a.size() == 5);
  for (std::size_t u = 0; u < a.size(); ++u) {
    CHECK(a[u].k == static_cast<int>(u) + 1);
    REQUIRE(a[u].items.size() == 40);
    for (std::size_t i = 0; i < a[u].items.size(); ++i) {
      CHECK(a[u].items[i].per_system.size() == 4);
      for (const auto& [system, s] : a[u].items[i].per_system) {
        const auto& other = b[u].items[i].per_system.at(system);
        CHECK(s.human == other.human);
        CHECK(s.metric == other.metric);
      }
    }
  }
}

TEST_CASE("noiseless simulation is perfectly accurate") {
  SimConfig config = Small();
  config.sigma_human = 0.0;
  config.sigma_metric = 0.0;
  for (const SimUnit& unit : Simulate(config)) {
    CHECK(SegmentAccuracy(unit.items, 0.0) == 1.0);
  }
  const std::vector<int> ks{1, 5};
  for (const auto& point : NoiseCurve(config, ks, 4)) {
    CHECK(point.mean_accuracy == 1.0);
    CHECK(point.stddev_accuracy == 0.0);
  }
}

TEST_CASE("paragraph noise variance shrinks as 1/k") {
  SimConfig config;
  config.n_items = 2000;
  config.n_systems = 2;
  config.max_k = 4;
  config.sigma_quality = 0.0;
  config.system_mean_spread = 0.0;
  config.sigma_human = 1.0;
  config.sigma_metric = 1.0;
  const auto units = Simulate(config);
  for (int k : {1, 4}) {
    double sum = 0.0;
    double squares = 0.0;
    int n = 0;
    for (const EvalItem& item : units[static_cast<std::size_t>(k - 1)].items) {
      const double d = item.per_system.begin()->second.human -
                       std::prev(item.per_system.end())->second.human;
      sum += d;
      squares += d * d;
      ++n;
    }
    const double variance = squares / n - (sum / n) * (sum / n);
    // Difference of two independent means: 2 / k.
    CHECK(variance == doctest::Approx(2.0 / k).epsilon(0.1));
  }
}

TEST_CASE("pure noise is near chance, large spread is near perfect") {
  SimConfig noise;
  noise.n_items = 100;
  noise.n_systems = 4;
  noise.max_k = 2;
  noise.sigma_quality = 0.0;
  noise.system_mean_spread = 0.0;
  const std::vector<int> ks{1, 2};
  for (const auto& point : NoiseCurve(noise, ks, 50)) {
    CHECK(point.mean_accuracy == doctest::Approx(0.5).epsilon(0.05));
  }

  SimConfig signal = noise;
  signal.n_systems = 2;
  signal.system_mean_spread = 100.0;
  for (const auto& point : NoiseCurve(signal, ks, 20)) {
    CHECK(point.mean_accuracy > 0.99);
  }
}

TEST_CASE("noise curve does not depend on the thread count") {
  const std::vector<int> ks{1, 3, 5};
  const auto one = NoiseCurve(Small(), ks, 8, 1);
  const auto many = NoiseCurve(Small(), ks, 8, 5);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].per_seed == many[i].per_seed);
    CHECK(one[i].mean_accuracy == many[i].mean_accuracy);
    CHECK(one[i].stddev_accuracy == many[i].stddev_accuracy);
  }
  const std::vector<int> single{1};
  CHECK_THROWS_AS(NoiseCurve(Small(), single, 2), ArgumentError);
  const std::vector<int> too_big{1, 6};
  CHECK_THROWS_AS(NoiseCurve(Small(), too_big, 2), ArgumentError);
}

TEST_CASE("config parsing") {
  const SimConfig config = ParseSimConfig(
      "# noise study\n"
      "n_items = 50\n"
      "n_systems: 3\n"
      "sigma_metric = 0.25  # metric noise\n"
      "seed = 18446744073709551615\n");
  CHECK(config.n_items == 50);
  CHECK(config.n_systems == 3);
  CHECK(config.sigma_metric == 0.25);
  CHECK(config.seed == 18446744073709551615ULL);
  CHECK(config.max_k == SimConfig{}.max_k);
  CHECK_THROWS_AS(ParseSimConfig("n_item = 3\n"), ArgumentError);
  CHECK_THROWS_AS(ParseSimConfig("n_items = three\n"), ArgumentError);
  CHECK_THROWS_AS(ParseSimConfig("n_items = 3\nn_items = 4\n"), ArgumentError);
  CHECK_THROWS_AS(ParseSimConfig("n_systems = 1\n"), ArgumentError);
}

}  // namespace
}  // namespace paraeval
