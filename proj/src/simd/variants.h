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

#ifndef OPBENCH_SRC_SIMD_VARIANTS_H_
#define OPBENCH_SRC_SIMD_VARIANTS_H_

#include "opbench/simd/dispatch.h"

namespace opbench::simd {

// Null when the variant was not compiled into this build. Availability on
// the running CPU is checked separately by the dispatcher.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace opbench::simd

#endif  // OPBENCH_SRC_SIMD_VARIANTS_H_
