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

// Reference implementations of the dispatch table. Compiled for the baseline
// target with fp-contraction off; every SIMD variant is tested against these.

#include <algorithm>

#include "opbench/simd/dispatch.h"
#include "src/simd/variants.h"

namespace opbench::simd {
namespace {

float dot(const float* a, const float* b, std::size_t n) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void gemm_nt(const float* a, std::size_t lda, const float* b, std::size_t ldb, const float* bias,
             float* c, std::size_t ldc, std::size_t m, std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      float acc = dot(a + i * lda, b + j * ldb, k);
      c[i * ldc + j] = bias != nullptr ? acc + bias[j] : acc;
    }
  }
}

inline float apply(BinaryOp op, float a, float b) {
  switch (op) {
    case BinaryOp::kAdd: return a + b;
    case BinaryOp::kSub: return a - b;
    case BinaryOp::kMul: return a * b;
    case BinaryOp::kDiv: return a / b;
  }
  return 0.0f;
}

void binary(BinaryOp op, const float* a, const float* b, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = apply(op, a[i], b[i]);
}

void binary_scalar(BinaryOp op, const float* a, float s, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = apply(op, a[i], s);
}

void neg(const float* a, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = -a[i];
}

void relu(const float* a, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > 0.0f ? a[i] : 0.0f;
}

double sum(const float* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_dev(const float* x, std::size_t n, double mean) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = x[i] - mean;
    acc += d * d;
  }
  return acc;
}

float max(const float* x, std::size_t n) {
  float m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

void normalize(const float* x, float* out, std::size_t n, float shift, float scale,
               const float* gamma, const float* beta) {
  for (std::size_t i = 0; i < n; ++i) {
    float y = (x[i] - shift) * scale;
    if (gamma != nullptr) y = y * gamma[i];
    if (beta != nullptr) y = y + beta[i];
    out[i] = y;
  }
}

void scale_shift(const float* x, float* out, std::size_t n, float scale, float shift) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * scale + shift;
}

void iou_row(float rx1, float ry1, float rx2, float ry2, float rarea, BoxColumns boxes, float* iou,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float ix1 = std::max(rx1, boxes.x1[i]);
    float iy1 = std::max(ry1, boxes.y1[i]);
    float ix2 = std::min(rx2, boxes.x2[i]);
    float iy2 = std::min(ry2, boxes.y2[i]);
    float w = std::max(ix2 - ix1, 0.0f);
    float h = std::max(iy2 - iy1, 0.0f);
    float inter = w * h;
    float uni = (rarea + boxes.area[i]) - inter;
    iou[i] = (rarea > 0.0f && boxes.area[i] > 0.0f) ? inter / uni : 0.0f;
  }
}

constexpr KernelTable kScalarTable = {
    Isa::kScalar, dot, gemm_nt, binary, binary_scalar, neg, relu, sum,
    sum_sq_dev, max, normalize, scale_shift, iou_row,
};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace opbench::simd
