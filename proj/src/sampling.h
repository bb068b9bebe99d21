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

#ifndef PARAEVAL_SAMPLING_H_
#define PARAEVAL_SAMPLING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "model.h"

namespace paraeval {

// Draws n distinct pool elements uniformly without replacement. The pool is
// first put in canonical order, so the selection depends only on the pool's
// contents and the seed. Output is in canonical order.
// Throws ArgumentError if n == 0 or n exceeds the pool size.
std::vector<ParagraphInstance> SampleUniform(
    std::span<const ParagraphInstance> pool, std::size_t n,
    std::uint64_t seed);

// Draws n / |ks| paragraphs from each stratum k in ks, without replacement.
// Each stratum uses its own stream derived from (seed, k). Throws
// ArgumentError when n is not a positive multiple of |ks| or ks is empty,
// has duplicates or non-positive entries, and DataError naming k and its
// size for an undersized stratum.
std::vector<ParagraphInstance> SampleStratified(
    std::span<const ParagraphInstance> pool, std::size_t n,
    std::span<const int> ks, std::uint64_t seed);

}  // namespace paraeval

#endif  // PARAEVAL_SAMPLING_H_
