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

#include "opbench/simd/dispatch.h"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "src/simd/variants.h"

namespace opbench::simd {

#if !OPBENCH_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !OPBENCH_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "scalar";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if OPBENCH_HAVE_AVX2 && (defined(__x86_64__) || defined(__i386__))
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
      return neon_table() != nullptr;
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("instruction set '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  }
  switch (isa) {
    case Isa::kAvx2: return *avx2_table();
    case Isa::kNeon: return *neon_table();
    case Isa::kScalar: break;
  }
  return scalar_table();
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("OPBENCH_ISA"); env != nullptr) {
    std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table_for(initial_isa())};
  return slot;
}

}  // namespace

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

Isa active_isa() { return active().isa; }

void set_active_isa(Isa isa) { active_slot().store(&table_for(isa), std::memory_order_release); }

}  // namespace opbench::simd
