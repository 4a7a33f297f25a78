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

#ifndef OPBENCH_SIMD_DISPATCH_H_
#define OPBENCH_SIMD_DISPATCH_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace opbench::simd {

// Instruction-set variants of the data-parallel inner loops. kScalar is the
// reference every other variant is equivalence-tested against.
enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

enum class BinaryOp { kAdd, kSub, kMul, kDiv };

// Structure-of-arrays box block for IoU rows.
struct BoxColumns {
  const float* x1;
  const float* y1;
  const float* x2;
  const float* y2;
  const float* area;
};

// One entry per inner loop. All pointers are unaligned-safe; n may be 0.
struct KernelTable {
  Isa isa;

  // Σ a[i]*b[i], accumulated in f32.
  float (*dot)(const float* a, const float* b, std::size_t n);

  // c[m*ldc + j] = Σ_k a[m*lda + k] * b[j*ldb + k] (+ bias[j] when non-null).
  void (*gemm_nt)(const float* a, std::size_t lda, const float* b, std::size_t ldb,
                  const float* bias, float* c, std::size_t ldc, std::size_t m, std::size_t n,
                  std::size_t k);

  // out[i] = a[i] op b[i]. IEEE-exact per element, so every variant agrees bitwise.
  void (*binary)(BinaryOp op, const float* a, const float* b, float* out, std::size_t n);
  // out[i] = a[i] op s.
  void (*binary_scalar)(BinaryOp op, const float* a, float s, float* out, std::size_t n);
  void (*neg)(const float* a, float* out, std::size_t n);
  void (*relu)(const float* a, float* out, std::size_t n);

  // Σ x[i] and Σ (x[i]-mean)^2 accumulated in f64.
  double (*sum)(const float* x, std::size_t n);
  double (*sum_sq_dev)(const float* x, std::size_t n, double mean);
  float (*max)(const float* x, std::size_t n);

  // out[i] = (x[i] - shift) * scale, then * gamma[i] + beta[i] when non-null.
  void (*normalize)(const float* x, float* out, std::size_t n, float shift, float scale,
                    const float* gamma, const float* beta);

  // out[i] = x[i] * scale + shift.
  void (*scale_shift)(const float* x, float* out, std::size_t n, float scale, float shift);

  // iou[i] for box `ref` against boxes i in [0, n). Zero-area pairs give 0.
  // Uses only exactly rounded ops, so variants agree bitwise.
  void (*iou_row)(float rx1, float ry1, float rx2, float ry2, float rarea, BoxColumns boxes,
                  float* iou, std::size_t n);
};

const KernelTable& scalar_table();

bool isa_available(Isa isa);
std::vector<Isa> available_isas();

// Table for a specific variant; throws std::invalid_argument when unavailable.
const KernelTable& table_for(Isa isa);

// Active table. Chosen once from CPU features (best available), overridable
// with OPBENCH_ISA=scalar|avx2|neon or set_active_isa().
const KernelTable& active();
Isa active_isa();
void set_active_isa(Isa isa);

}  // namespace opbench::simd

#endif  // OPBENCH_SIMD_DISPATCH_H_
