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

#include "opbench/random.h"

#include "opbench/errors.h"

namespace opbench {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = fnv1a(label);
  // splitmix64 finalizer over the combination.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (h | 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<float> Rng::fill(std::size_t n, float lo, float hi) {
  std::vector<float> out(n);
  for (float& v : out) v = uniform(lo, hi);
  return out;
}

Tensor Rng::tensor(const Dims& dims, float lo, float hi) {
  if (auto err = check_dims(dims); !err.empty()) throw ShapeMismatch(err);
  std::int64_t n = 1;
  for (std::int64_t d : dims) n *= d;
  return Tensor::from_vector(dims, fill(static_cast<std::size_t>(n), lo, hi));
}

}  // namespace opbench
