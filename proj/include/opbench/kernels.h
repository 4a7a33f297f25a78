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

#ifndef OPBENCH_KERNELS_H_
#define OPBENCH_KERNELS_H_

// Framework-free reference operators. All kernels are pure, single-threaded
// and deterministic for a fixed instruction-set selection. Inner loops go
// through simd::active().

#include <cstdint>
#include <span>
#include <vector>

#include "opbench/tensor.h"

namespace opbench::kernels {

// ---- GEMM family -----------------------------------------------------------

// input [..., K] x weight [N, K] (+ bias [N]) -> [..., N].
Tensor linear(const Tensor& input, const Tensor& weight, const Tensor* bias = nullptr);

// a [..., M, K] x b [..., K, N] -> [..., M, N]. b may also be 2-D and shared
// across a's batch.
Tensor matmul(const Tensor& a, const Tensor& b);

struct ConvParams {
  std::int64_t stride_h = 1;
  std::int64_t stride_w = 1;
  std::int64_t pad_h = 0;
  std::int64_t pad_w = 0;
};

enum class ConvMethod { kDirect, kIm2col };

// input [B, Cin, L] x weight [Cout, Cin, Kl] -> [B, Cout, Lout]. Uses the
// `_w` fields of `params`.
Tensor conv1d(const Tensor& input, const Tensor& weight, const Tensor* bias, const ConvParams& params);

// input [B, Cin, H, W] x weight [Cout, Cin, Kh, Kw] -> [B, Cout, Hout, Wout].
// kIm2col lowers to the linear GEMM path.
Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor* bias, const ConvParams& params,
              ConvMethod method = ConvMethod::kIm2col);

// floor((in + 2*pad - k) / stride) + 1, or throws.
std::int64_t conv_out_size(std::int64_t in, std::int64_t kernel, std::int64_t stride, std::int64_t pad);

// ---- Normalization ---------------------------------------------------------

inline constexpr float kLayerNormEps = 1e-5f;
inline constexpr float kRmsNormEps = 1e-6f;

// Over the last dimension, population variance. gamma/beta length = last dim.
Tensor layer_norm(const Tensor& input, float eps = kLayerNormEps, const Tensor* gamma = nullptr,
                  const Tensor* beta = nullptr);

// Frozen statistics, channel axis 1; each vector holds one value per channel.
struct BatchNormParams {
  std::vector<float> mean;
  std::vector<float> var;
  std::vector<float> gamma;
  std::vector<float> beta;
  float eps = kLayerNormEps;
};

Tensor batch_norm_inference(const Tensor& input, const BatchNormParams& params);

Tensor rms_norm(const Tensor& input, float eps = kRmsNormEps, const Tensor* gamma = nullptr);

// ---- Logits / activations / arithmetic ---------------------------------------

Tensor softmax(const Tensor& input, std::int64_t dim = -1);

enum class ActivationKind { kRelu, kGelu, kSilu };

// gelu is the exact x * Phi(x) form.
Tensor activation(ActivationKind kind, const Tensor& input);

enum class ElementwiseKind { kAdd, kSub, kMul, kDiv, kNeg };

// b must match a, be a single element, or broadcast onto a by stretching
// size-1 (or missing leading) axes. Ignored for kNeg.
Tensor elementwise(ElementwiseKind kind, const Tensor& a, const Tensor* b = nullptr);
Tensor elementwise(ElementwiseKind kind, const Tensor& a, float b);

// ---- Memory operations -----------------------------------------------------

// Aliasing: view, permute, transpose, expand, squeeze, unsqueeze, split, and
// reshape/contiguous of a contiguous input. Everything else copies.
Tensor view(const Tensor& input, const Dims& shape);  // one -1 allowed
Tensor reshape(const Tensor& input, const Dims& shape);
Tensor permute(const Tensor& input, const Dims& axes);
Tensor transpose(const Tensor& input, std::int64_t dim0, std::int64_t dim1);
Tensor contiguous(const Tensor& input);
std::vector<Tensor> split(const Tensor& input, std::int64_t split_size, std::int64_t dim);
std::vector<Tensor> split_sections(const Tensor& input, const Dims& sections, std::int64_t dim);
Tensor concat(std::span<const Tensor> inputs, std::int64_t dim);
Tensor expand(const Tensor& input, const Dims& shape);  // -1 keeps a dim
Tensor squeeze(const Tensor& input);
Tensor squeeze(const Tensor& input, std::int64_t dim);
Tensor unsqueeze(const Tensor& input, std::int64_t dim);

// ---- RoI selection ---------------------------------------------------------

struct Box {
  float x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  // Swaps coordinates so that x2 >= x1 and y2 >= y1.
  Box canonical() const;
  float area() const;
};

// Zero-area boxes have IoU 0 against anything.
float iou(const Box& a, const Box& b);

struct NmsParams {
  float score_threshold = 0.0f;
  float iou_threshold = 0.5f;
};

// Greedy suppression: drop scores below the threshold, visit the rest by
// descending score (ties by ascending index), keep a box unless an already
// kept box overlaps it with IoU > iou_threshold. Returns kept indices in
// keep order. Comparisons within 1e-5 of the threshold are made in double.
std::vector<std::int64_t> nms(std::span<const Box> boxes, std::span<const float> scores,
                              const NmsParams& params);

// boxes [N, 4] as (x1, y1, x2, y2), scores [N] -> i64 [K]. Undefined when
// nothing survives, since zero-size dims are not modelled.
Tensor nms(const Tensor& boxes, const Tensor& scores, const NmsParams& params);

// ---- Interpolation ---------------------------------------------------------

enum class InterpolationMode { kNearest, kBilinear };

// nearest: src = floor(dst * in/out). bilinear: half-pixel centres,
// src = (dst + 0.5) * in/out - 0.5, clamped to the edge.
Tensor interpolate(const Tensor& input, std::int64_t out_h, std::int64_t out_w, InterpolationMode mode);

}  // namespace opbench::kernels

#endif  // OPBENCH_KERNELS_H_
