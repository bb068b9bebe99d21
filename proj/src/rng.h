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

#ifndef PARAEVAL_RNG_H_
#define PARAEVAL_RNG_H_

#include <cstdint>
#include <random>

namespace paraeval {

// SplitMix64 finalizer (Steele, Lea and Flood 2014).
std::uint64_t SplitMix64(std::uint64_t x);

// Independent seed for stream `stream` of a run seeded with `base`.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

// Portable random source: std::mt19937_64, whose output sequence is fixed by
// the C++ standard, seeded with SplitMix64(seed). The distributions below
// are implemented here rather than taken from <random>, whose algorithms are
// implementation-defined, so draws are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling, no
  // modulo bias.
  std::uint64_t Below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();

  // Standard normal via the Marsaglia polar method.
  double Normal();

  double Normal(double mean, double stddev) {
    return mean + stddev * Normal();
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace paraeval

#endif  // PARAEVAL_RNG_H_
