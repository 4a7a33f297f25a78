/* Copyright 2026 The opbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef OPBENCH_RANDOM_H_
#define OPBENCH_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "opbench/tensor.h"

namespace opbench {

// 64-bit FNV-1a. Used to derive per-node and per-spec seeds.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

// Mixes a base seed with a label so sibling streams do not overlap.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

// Input/parameter generator. Each f32 takes the top 24 bits of one
// mt19937_64 draw, so the stream is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 2^-24 resolution.
  float unit() { return static_cast<float>(engine_() >> 40) * 0x1.0p-24f; }
  // Uniform on [lo, hi).
  float uniform(float lo, float hi) { return lo + (hi - lo) * unit(); }

  std::vector<float> fill(std::size_t n, float lo = -1.0f, float hi = 1.0f);
  Tensor tensor(const Dims& dims, float lo = -1.0f, float hi = 1.0f);

 private:
  std::mt19937_64 engine_;
};

}  // namespace opbench

#endif  // OPBENCH_RANDOM_H_
