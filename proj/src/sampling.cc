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

#include "sampling.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "errors.h"
#include "rng.h"

namespace paraeval {

namespace {

// Partial Fisher-Yates over the canonically ordered candidates.
std::vector<ParagraphInstance> Draw(std::vector<const ParagraphInstance*> pool,
                                    std::size_t n, std::uint64_t seed) {
  std::stable_sort(pool.begin(), pool.end(),
                   [](const ParagraphInstance* a, const ParagraphInstance* b) {
                     return CanonicalLess(*a, *b);
                   });
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.Below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  std::stable_sort(pool.begin(), pool.end(),
                   [](const ParagraphInstance* a, const ParagraphInstance* b) {
                     return CanonicalLess(*a, *b);
                   });
  std::vector<ParagraphInstance> out;
  out.reserve(n);
  for (const ParagraphInstance* p : pool) out.push_back(*p);
  return out;
}

}  // namespace

std::vector<ParagraphInstance> SampleUniform(
    std::span<const ParagraphInstance> pool, std::size_t n,
    std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample size must be positive");
  if (n > pool.size()) {
    throw ArgumentError("sample size " + std::to_string(n) +
                        " exceeds pool size " + std::to_string(pool.size()));
  }
  std::vector<const ParagraphInstance*> candidates;
  candidates.reserve(pool.size());
  for (const ParagraphInstance& p : pool) candidates.push_back(&p);
  return Draw(std::move(candidates), n, seed);
}

std::vector<ParagraphInstance> SampleStratified(
    std::span<const ParagraphInstance> pool, std::size_t n,
    std::span<const int> ks, std::uint64_t seed) {
  if (ks.empty()) throw ArgumentError("stratified sampling needs at least one k");
  const std::set<int> distinct(ks.begin(), ks.end());
  if (distinct.size() != ks.size()) {
    throw ArgumentError("duplicate k in strata list");
  }
  if (*distinct.begin() < 1) throw ArgumentError("k must be positive");
  if (n == 0 || n % ks.size() != 0) {
    throw ArgumentError("sample size " + std::to_string(n) +
                        " is not a positive multiple of the " +
                        std::to_string(ks.size()) + " strata");
  }
  const std::size_t per_stratum = n / ks.size();

  std::vector<std::vector<const ParagraphInstance*>> strata;
  for (int k : distinct) {
    std::vector<const ParagraphInstance*> stratum;
    for (const ParagraphInstance& p : pool) {
      if (p.k == k) stratum.push_back(&p);
    }
    if (stratum.size() < per_stratum) {
      throw DataError("stratum k=" + std::to_string(k) + " has " +
                      std::to_string(stratum.size()) +
                      " paragraphs, fewer than the " +
                      std::to_string(per_stratum) + " required");
    }
    strata.push_back(std::move(stratum));
  }

  std::vector<ParagraphInstance> out;
  out.reserve(n);
  std::size_t index = 0;
  for (int k : distinct) {
    auto drawn = Draw(std::move(strata[index++]), per_stratum,
                      DeriveSeed(seed, static_cast<std::uint64_t>(k)));
    std::move(drawn.begin(), drawn.end(), std::back_inserter(out));
  }
  std::stable_sort(out.begin(), out.end(), CanonicalLess);
  return out;
}

}  // namespace paraeval
