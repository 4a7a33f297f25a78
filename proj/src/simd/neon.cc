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

// AArch64 NEON variants. Built only for aarch64 targets, where Advanced SIMD
// is architecturally guaranteed. Contraction is disabled, so FMA appears
// only where written.

#include <arm_neon.h>

#include <algorithm>

#include "opbench/simd/dispatch.h"
#include "src/simd/variants.h"

namespace opbench::simd {
namespace {

float dot(const float* a, const float* b, std::size_t n) {
  float32x4_t acc0 = vdupq_n_f32(0.0f);
  float32x4_t acc1 = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
    acc1 = vfmaq_f32(acc1, vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
  float acc = vaddvq_f32(vaddq_f32(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void gemm_nt(const float* a, std::size_t lda, const float* b, std::size_t ldb, const float* bias,
             float* c, std::size_t ldc, std::size_t m, std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const float* arow = a + i * lda;
    float* crow = c + i * ldc;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const float* b0 = b + j * ldb;
      const float* b1 = b0 + ldb;
      const float* b2 = b1 + ldb;
      const float* b3 = b2 + ldb;
      float32x4_t c0 = vdupq_n_f32(0.0f);
      float32x4_t c1 = vdupq_n_f32(0.0f);
      float32x4_t c2 = vdupq_n_f32(0.0f);
      float32x4_t c3 = vdupq_n_f32(0.0f);
      std::size_t p = 0;
      for (; p + 4 <= k; p += 4) {
        float32x4_t va = vld1q_f32(arow + p);
        c0 = vfmaq_f32(c0, va, vld1q_f32(b0 + p));
        c1 = vfmaq_f32(c1, va, vld1q_f32(b1 + p));
        c2 = vfmaq_f32(c2, va, vld1q_f32(b2 + p));
        c3 = vfmaq_f32(c3, va, vld1q_f32(b3 + p));
      }
      float out[4] = {vaddvq_f32(c0), vaddvq_f32(c1), vaddvq_f32(c2), vaddvq_f32(c3)};
      for (; p < k; ++p) {
        out[0] += arow[p] * b0[p];
        out[1] += arow[p] * b1[p];
        out[2] += arow[p] * b2[p];
        out[3] += arow[p] * b3[p];
      }
      for (int t = 0; t < 4; ++t) crow[j + t] = bias != nullptr ? out[t] + bias[j + t] : out[t];
    }
    for (; j < n; ++j) {
      float acc = dot(arow, b + j * ldb, k);
      crow[j] = bias != nullptr ? acc + bias[j] : acc;
    }
  }
}

inline float32x4_t apply(BinaryOp op, float32x4_t a, float32x4_t b) {
  switch (op) {
    case BinaryOp::kAdd: return vaddq_f32(a, b);
    case BinaryOp::kSub: return vsubq_f32(a, b);
    case BinaryOp::kMul: return vmulq_f32(a, b);
    case BinaryOp::kDiv: return vdivq_f32(a, b);
  }
  return a;
}

inline float apply(BinaryOp op, float a, float b) {
  switch (op) {
    case BinaryOp::kAdd: return a + b;
    case BinaryOp::kSub: return a - b;
    case BinaryOp::kMul: return a * b;
    case BinaryOp::kDiv: return a / b;
  }
  return a;
}

void binary(BinaryOp op, const float* a, const float* b, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(out + i, apply(op, vld1q_f32(a + i), vld1q_f32(b + i)));
  for (; i < n; ++i) out[i] = apply(op, a[i], b[i]);
}

void binary_scalar(BinaryOp op, const float* a, float s, float* out, std::size_t n) {
  const float32x4_t vs = vdupq_n_f32(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(out + i, apply(op, vld1q_f32(a + i), vs));
  for (; i < n; ++i) out[i] = apply(op, a[i], s);
}

void neg(const float* a, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(out + i, vnegq_f32(vld1q_f32(a + i)));
  for (; i < n; ++i) out[i] = -a[i];
}

void relu(const float* a, float* out, std::size_t n) {
  const float32x4_t zero = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t x = vld1q_f32(a + i);
    vst1q_f32(out + i, vbslq_f32(vcgtq_f32(x, zero), x, zero));
  }
  for (; i < n; ++i) out[i] = a[i] > 0.0f ? a[i] : 0.0f;
}

double sum(const float* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t v = vld1q_f32(x + i);
    acc0 = vaddq_f64(acc0, vcvt_f64_f32(vget_low_f32(v)));
    acc1 = vaddq_f64(acc1, vcvt_high_f64_f32(v));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_dev(const float* x, std::size_t n, double mean) {
  const float64x2_t vm = vdupq_n_f64(mean);
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t v = vld1q_f32(x + i);
    float64x2_t d0 = vsubq_f64(vcvt_f64_f32(vget_low_f32(v)), vm);
    float64x2_t d1 = vsubq_f64(vcvt_high_f64_f32(v), vm);
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    double d = x[i] - mean;
    acc += d * d;
  }
  return acc;
}

float max(const float* x, std::size_t n) {
  float m = x[0];
  std::size_t i = 1;
  if (n >= 4) {
    float32x4_t vm = vld1q_f32(x);
    for (i = 4; i + 4 <= n; i += 4) vm = vmaxq_f32(vm, vld1q_f32(x + i));
    m = vmaxvq_f32(vm);
  }
  for (; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

void normalize(const float* x, float* out, std::size_t n, float shift, float scale,
               const float* gamma, const float* beta) {
  const float32x4_t vshift = vdupq_n_f32(shift);
  const float32x4_t vscale = vdupq_n_f32(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t y = vmulq_f32(vsubq_f32(vld1q_f32(x + i), vshift), vscale);
    if (gamma != nullptr) y = vmulq_f32(y, vld1q_f32(gamma + i));
    if (beta != nullptr) y = vaddq_f32(y, vld1q_f32(beta + i));
    vst1q_f32(out + i, y);
  }
  for (; i < n; ++i) {
    float y = (x[i] - shift) * scale;
    if (gamma != nullptr) y = y * gamma[i];
    if (beta != nullptr) y = y + beta[i];
    out[i] = y;
  }
}

void scale_shift(const float* x, float* out, std::size_t n, float scale, float shift) {
  const float32x4_t vscale = vdupq_n_f32(scale);
  const float32x4_t vshift = vdupq_n_f32(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(out + i, vaddq_f32(vmulq_f32(vld1q_f32(x + i), vscale), vshift));
  for (; i < n; ++i) out[i] = x[i] * scale + shift;
}

// Selects with explicit compares so signed-zero ties match std::max/std::min.
inline float32x4_t max_like_std(float32x4_t a, float32x4_t b) {
  return vbslq_f32(vcltq_f32(a, b), b, a);
}

inline float32x4_t min_like_std(float32x4_t a, float32x4_t b) {
  return vbslq_f32(vcltq_f32(b, a), b, a);
}

void iou_row(float rx1, float ry1, float rx2, float ry2, float rarea, BoxColumns boxes, float* iou,
             std::size_t n) {
  const float32x4_t vx1 = vdupq_n_f32(rx1);
  const float32x4_t vy1 = vdupq_n_f32(ry1);
  const float32x4_t vx2 = vdupq_n_f32(rx2);
  const float32x4_t vy2 = vdupq_n_f32(ry2);
  const float32x4_t varea = vdupq_n_f32(rarea);
  const float32x4_t zero = vdupq_n_f32(0.0f);
  const uint32x4_t ref_valid = vcgtq_f32(varea, zero);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t ix1 = max_like_std(vx1, vld1q_f32(boxes.x1 + i));
    float32x4_t iy1 = max_like_std(vy1, vld1q_f32(boxes.y1 + i));
    float32x4_t ix2 = min_like_std(vx2, vld1q_f32(boxes.x2 + i));
    float32x4_t iy2 = min_like_std(vy2, vld1q_f32(boxes.y2 + i));
    float32x4_t w = max_like_std(vsubq_f32(ix2, ix1), zero);
    float32x4_t h = max_like_std(vsubq_f32(iy2, iy1), zero);
    float32x4_t inter = vmulq_f32(w, h);
    float32x4_t area = vld1q_f32(boxes.area + i);
    float32x4_t uni = vsubq_f32(vaddq_f32(varea, area), inter);
    uint32x4_t valid = vandq_u32(ref_valid, vcgtq_f32(area, zero));
    vst1q_f32(iou + i, vbslq_f32(valid, vdivq_f32(inter, uni), zero));
  }
  for (; i < n; ++i) {
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

constexpr KernelTable kNeonTable = {
    Isa::kNeon, dot, gemm_nt, binary, binary_scalar, neg, relu, sum,
    sum_sq_dev, max, normalize, scale_shift, iou_row,
};

}  // namespace

const KernelTable* neon_table() { return &kNeonTable; }

}  // namespace opbench::simd
