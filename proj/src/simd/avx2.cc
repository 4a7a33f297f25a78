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

// AVX2 + FMA variants. This translation unit is the only one built with
// -mavx2 -mfma; nothing here may run before the dispatcher has checked CPU
// support. Contraction is disabled, so FMA appears only where written.

#include <immintrin.h>

#include <algorithm>

#include "opbench/simd/dispatch.h"
#include "src/simd/variants.h"

namespace opbench::simd {
namespace {

inline float hsum(__m256 v) {
  __m128 lo = _mm_add_ps(_mm256_castps256_ps128(v), _mm256_extractf128_ps(v, 1));
  __m128 shuf = _mm_movehdup_ps(lo);
  __m128 sums = _mm_add_ps(lo, shuf);
  shuf = _mm_movehl_ps(shuf, sums);
  return _mm_cvtss_f32(_mm_add_ss(sums, shuf));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

float dot(const float* a, const float* b, std::size_t n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8), _mm256_loadu_ps(b + i + 8), acc1);
  }
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
  }
  float acc = hsum(_mm256_add_ps(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// One row of A against four rows of B, sharing the A loads.
void dot_1x4(const float* a, const float* b0, const float* b1, const float* b2, const float* b3,
             std::size_t k, float out[4]) {
  __m256 c0 = _mm256_setzero_ps();
  __m256 c1 = _mm256_setzero_ps();
  __m256 c2 = _mm256_setzero_ps();
  __m256 c3 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= k; i += 8) {
    __m256 va = _mm256_loadu_ps(a + i);
    c0 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b0 + i), c0);
    c1 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b1 + i), c1);
    c2 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b2 + i), c2);
    c3 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b3 + i), c3);
  }
  out[0] = hsum(c0);
  out[1] = hsum(c1);
  out[2] = hsum(c2);
  out[3] = hsum(c3);
  for (; i < k; ++i) {
    out[0] += a[i] * b0[i];
    out[1] += a[i] * b1[i];
    out[2] += a[i] * b2[i];
    out[3] += a[i] * b3[i];
  }
}

void gemm_nt(const float* a, std::size_t lda, const float* b, std::size_t ldb, const float* bias,
             float* c, std::size_t ldc, std::size_t m, std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const float* arow = a + i * lda;
    float* crow = c + i * ldc;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      float out[4];
      dot_1x4(arow, b + j * ldb, b + (j + 1) * ldb, b + (j + 2) * ldb, b + (j + 3) * ldb, k, out);
      for (int t = 0; t < 4; ++t) crow[j + t] = bias != nullptr ? out[t] + bias[j + t] : out[t];
    }
    for (; j < n; ++j) {
      float acc = dot(arow, b + j * ldb, k);
      crow[j] = bias != nullptr ? acc + bias[j] : acc;
    }
  }
}

template <BinaryOp Op>
inline __m256 apply(__m256 a, __m256 b) {
  if constexpr (Op == BinaryOp::kAdd) return _mm256_add_ps(a, b);
  if constexpr (Op == BinaryOp::kSub) return _mm256_sub_ps(a, b);
  if constexpr (Op == BinaryOp::kMul) return _mm256_mul_ps(a, b);
  if constexpr (Op == BinaryOp::kDiv) return _mm256_div_ps(a, b);
}

template <BinaryOp Op>
inline float apply(float a, float b) {
  if constexpr (Op == BinaryOp::kAdd) return a + b;
  if constexpr (Op == BinaryOp::kSub) return a - b;
  if constexpr (Op == BinaryOp::kMul) return a * b;
  if constexpr (Op == BinaryOp::kDiv) return a / b;
}

template <BinaryOp Op>
void binary_impl(const float* a, const float* b, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, apply<Op>(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  }
  for (; i < n; ++i) out[i] = apply<Op>(a[i], b[i]);
}

template <BinaryOp Op>
void binary_scalar_impl(const float* a, float s, float* out, std::size_t n) {
  const __m256 vs = _mm256_set1_ps(s);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(out + i, apply<Op>(_mm256_loadu_ps(a + i), vs));
  for (; i < n; ++i) out[i] = apply<Op>(a[i], s);
}

void binary(BinaryOp op, const float* a, const float* b, float* out, std::size_t n) {
  switch (op) {
    case BinaryOp::kAdd: return binary_impl<BinaryOp::kAdd>(a, b, out, n);
    case BinaryOp::kSub: return binary_impl<BinaryOp::kSub>(a, b, out, n);
    case BinaryOp::kMul: return binary_impl<BinaryOp::kMul>(a, b, out, n);
    case BinaryOp::kDiv: return binary_impl<BinaryOp::kDiv>(a, b, out, n);
  }
}

void binary_scalar(BinaryOp op, const float* a, float s, float* out, std::size_t n) {
  switch (op) {
    case BinaryOp::kAdd: return binary_scalar_impl<BinaryOp::kAdd>(a, s, out, n);
    case BinaryOp::kSub: return binary_scalar_impl<BinaryOp::kSub>(a, s, out, n);
    case BinaryOp::kMul: return binary_scalar_impl<BinaryOp::kMul>(a, s, out, n);
    case BinaryOp::kDiv: return binary_scalar_impl<BinaryOp::kDiv>(a, s, out, n);
  }
}

void neg(const float* a, float* out, std::size_t n) {
  const __m256 sign = _mm256_set1_ps(-0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(out + i, _mm256_xor_ps(_mm256_loadu_ps(a + i), sign));
  for (; i < n; ++i) out[i] = -a[i];
}

void relu(const float* a, float* out, std::size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  std::size_t i = 0;
  // max(x, 0) returns the second operand on ties and NaN, matching x > 0 ? x : 0.
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(out + i, _mm256_max_ps(_mm256_loadu_ps(a + i), zero));
  for (; i < n; ++i) out[i] = a[i] > 0.0f ? a[i] : 0.0f;
}

double sum(const float* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_cvtps_pd(_mm_loadu_ps(x + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_cvtps_pd(_mm_loadu_ps(x + i + 4)));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_dev(const float* x, std::size_t n, double mean) {
  const __m256d vm = _mm256_set1_pd(mean);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(x + i)), vm);
    __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(x + i + 4)), vm);
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    double d = x[i] - mean;
    acc += d * d;
  }
  return acc;
}

float max(const float* x, std::size_t n) {
  std::size_t i = 0;
  float m = x[0];
  if (n >= 8) {
    __m256 vm = _mm256_loadu_ps(x);
    for (i = 8; i + 8 <= n; i += 8) vm = _mm256_max_ps(_mm256_loadu_ps(x + i), vm);
    alignas(32) float lanes[8];
    _mm256_store_ps(lanes, vm);
    m = lanes[0];
    for (int t = 1; t < 8; ++t) m = lanes[t] > m ? lanes[t] : m;
  } else {
    i = 1;
  }
  for (; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

void normalize(const float* x, float* out, std::size_t n, float shift, float scale,
               const float* gamma, const float* beta) {
  const __m256 vshift = _mm256_set1_ps(shift);
  const __m256 vscale = _mm256_set1_ps(scale);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 y = _mm256_mul_ps(_mm256_sub_ps(_mm256_loadu_ps(x + i), vshift), vscale);
    if (gamma != nullptr) y = _mm256_mul_ps(y, _mm256_loadu_ps(gamma + i));
    if (beta != nullptr) y = _mm256_add_ps(y, _mm256_loadu_ps(beta + i));
    _mm256_storeu_ps(out + i, y);
  }
  for (; i < n; ++i) {
    float y = (x[i] - shift) * scale;
    if (gamma != nullptr) y = y * gamma[i];
    if (beta != nullptr) y = y + beta[i];
    out[i] = y;
  }
}

void scale_shift(const float* x, float* out, std::size_t n, float scale, float shift) {
  const __m256 vscale = _mm256_set1_ps(scale);
  const __m256 vshift = _mm256_set1_ps(shift);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(x + i), vscale), vshift));
  }
  for (; i < n; ++i) out[i] = x[i] * scale + shift;
}

void iou_row(float rx1, float ry1, float rx2, float ry2, float rarea, BoxColumns boxes, float* iou,
             std::size_t n) {
  // Operand order mirrors std::max/std::min in the scalar reference so that
  // signed-zero ties resolve identically.
  const __m256 vx1 = _mm256_set1_ps(rx1);
  const __m256 vy1 = _mm256_set1_ps(ry1);
  const __m256 vx2 = _mm256_set1_ps(rx2);
  const __m256 vy2 = _mm256_set1_ps(ry2);
  const __m256 varea = _mm256_set1_ps(rarea);
  const __m256 zero = _mm256_setzero_ps();
  const __m256 ref_valid = _mm256_cmp_ps(varea, zero, _CMP_GT_OQ);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 ix1 = _mm256_max_ps(_mm256_loadu_ps(boxes.x1 + i), vx1);
    __m256 iy1 = _mm256_max_ps(_mm256_loadu_ps(boxes.y1 + i), vy1);
    __m256 ix2 = _mm256_min_ps(_mm256_loadu_ps(boxes.x2 + i), vx2);
    __m256 iy2 = _mm256_min_ps(_mm256_loadu_ps(boxes.y2 + i), vy2);
    // max(d, 0) in the reference is (d < 0) ? 0 : d; max_ps(0, d) is (0 > d) ? 0 : d.
    __m256 w = _mm256_max_ps(zero, _mm256_sub_ps(ix2, ix1));
    __m256 h = _mm256_max_ps(zero, _mm256_sub_ps(iy2, iy1));
    __m256 inter = _mm256_mul_ps(w, h);
    __m256 area = _mm256_loadu_ps(boxes.area + i);
    __m256 uni = _mm256_sub_ps(_mm256_add_ps(varea, area), inter);
    __m256 valid = _mm256_and_ps(ref_valid, _mm256_cmp_ps(area, zero, _CMP_GT_OQ));
    _mm256_storeu_ps(iou + i, _mm256_blendv_ps(zero, _mm256_div_ps(inter, uni), valid));
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

constexpr KernelTable kAvx2Table = {
    Isa::kAvx2, dot, gemm_nt, binary, binary_scalar, neg, relu, sum,
    sum_sq_dev, max, normalize, scale_shift, iou_row,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2Table; }

}  // namespace opbench::simd
