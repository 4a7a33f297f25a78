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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "opbench/errors.h"
#include "opbench/kernels.h"
#include "opbench/simd/dispatch.h"

namespace opbench::kernels {

Box Box::canonical() const {
  return Box{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
}

float Box::area() const { return (x2 - x1) * (y2 - y1); }

float iou(const Box& a, const Box& b) {
  const Box ca = a.canonical();
  const Box cb = b.canonical();
  const float barea = cb.area();
  float out = 0.0f;
  simd::scalar_table().iou_row(ca.x1, ca.y1, ca.x2, ca.y2, ca.area(),
                               simd::BoxColumns{&cb.x1, &cb.y1, &cb.x2, &cb.y2, &barea}, &out, 1);
  return out;
}

namespace {

// Float IoU is a few ulps off; this close to the threshold the comparison is
// redone in double so exact ties (IoU 7/10 vs 0.7f) go the right way.
constexpr float kTieWindow = 1e-5f;

bool exceeds_exact(const float* x1, const float* y1, const float* x2, const float* y2, std::size_t a, std::size_t b,
                   float threshold) {
  const double aa = (double(x2[a]) - x1[a]) * (double(y2[a]) - y1[a]);
  const double ab = (double(x2[b]) - x1[b]) * (double(y2[b]) - y1[b]);
  if (aa <= 0.0 || ab <= 0.0) return 0.0 > threshold;
  const double iw = std::max(0.0, std::min<double>(x2[a], x2[b]) - std::max<double>(x1[a], x1[b]));
  const double ih = std::max(0.0, std::min<double>(y2[a], y2[b]) - std::max<double>(y1[a], y1[b]));
  const double inter = iw * ih;
  return inter / (aa + ab - inter) > double(threshold);
}

}  // namespace

std::vector<std::int64_t> nms(std::span<const Box> boxes, std::span<const float> scores,
                              const NmsParams& params) {
  if (boxes.size() != scores.size()) {
    throw ShapeMismatch("nms: " + std::to_string(boxes.size()) + " boxes vs " + std::to_string(scores.size()) +
                        " scores");
  }
  std::vector<std::int64_t> order;
  order.reserve(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    // NaN compares false and drops out here.
    if (scores[i] >= params.score_threshold) order.push_back(static_cast<std::int64_t>(i));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) { return scores[a] > scores[b]; });

  const std::size_t n = order.size();
  std::vector<float> x1(n), y1(n), x2(n), y2(n), area(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Box b = boxes[static_cast<std::size_t>(order[i])].canonical();
    x1[i] = b.x1;
    y1[i] = b.y1;
    x2[i] = b.x2;
    y2[i] = b.y2;
    area[i] = b.area();
  }

  const auto& table = simd::active();
  std::vector<std::uint8_t> suppressed(n, 0);
  std::vector<float> row(n);
  std::vector<std::int64_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (suppressed[i]) continue;
    keep.push_back(order[i]);
    const std::size_t rest = n - i - 1;
    if (rest == 0) break;
    table.iou_row(x1[i], y1[i], x2[i], y2[i], area[i],
                  simd::BoxColumns{&x1[i + 1], &y1[i + 1], &x2[i + 1], &y2[i + 1], &area[i + 1]}, row.data(), rest);
    for (std::size_t j = 0; j < rest; ++j) {
      if (std::fabs(row[j] - params.iou_threshold) <= kTieWindow) {
        if (exceeds_exact(x1.data(), y1.data(), x2.data(), y2.data(), i, i + 1 + j, params.iou_threshold)) {
          suppressed[i + 1 + j] = 1;
        }
      } else if (row[j] > params.iou_threshold) {
        suppressed[i + 1 + j] = 1;
      }
    }
  }
  return keep;
}

Tensor nms(const Tensor& boxes, const Tensor& scores, const NmsParams& params) {
  if (boxes.rank() != 2 || boxes.dims()[1] != 4) throw ShapeMismatch("nms boxes must be [N, 4]");
  if (scores.numel() != boxes.dims()[0]) throw ShapeMismatch("nms scores must be [N]");
  const std::vector<float> flat = boxes.to_f32_vector();
  const std::vector<float> s = scores.to_f32_vector();
  std::vector<Box> list(s.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    list[i] = Box{flat[4 * i], flat[4 * i + 1], flat[4 * i + 2], flat[4 * i + 3]};
  }
  std::vector<std::int64_t> keep = nms(list, s, params);
  if (keep.empty()) return Tensor();
  const Dims dims{static_cast<std::int64_t>(keep.size())};
  return Tensor::from_vector(dims, std::move(keep));
}

Tensor interpolate(const Tensor& input, std::int64_t out_h, std::int64_t out_w, InterpolationMode mode) {
  if (input.dtype() != DType::kF32 || input.rank() != 4) {
    throw ShapeMismatch("interpolate expects an f32 [B, C, H, W] input");
  }
  if (out_h < 1 || out_w < 1) throw BadAttr("interpolate output size must be positive");
  const std::int64_t planes = input.dims()[0] * input.dims()[1];
  const std::int64_t in_h = input.dims()[2], in_w = input.dims()[3];
  Tensor x = input.contiguous();
  Tensor out = Tensor::zeros({input.dims()[0], input.dims()[1], out_h, out_w});
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();

  if (mode == InterpolationMode::kNearest) {
    std::vector<std::int64_t> sy(out_h), sx(out_w);
    for (std::int64_t y = 0; y < out_h; ++y) sy[y] = std::min(y * in_h / out_h, in_h - 1);
    for (std::int64_t v = 0; v < out_w; ++v) sx[v] = std::min(v * in_w / out_w, in_w - 1);
    for (std::int64_t p = 0; p < planes; ++p) {
      const float* src = xp + p * in_h * in_w;
      float* dst = op + p * out_h * out_w;
      for (std::int64_t y = 0; y < out_h; ++y) {
        for (std::int64_t v = 0; v < out_w; ++v) dst[y * out_w + v] = src[sy[y] * in_w + sx[v]];
      }
    }
    return out;
  }

  struct Tap {
    std::int64_t i0, i1;
    double frac;
  };
  auto taps = [](std::int64_t in, std::int64_t outn) {
    std::vector<Tap> t(static_cast<std::size_t>(outn));
    const double scale = static_cast<double>(in) / static_cast<double>(outn);
    for (std::int64_t d = 0; d < outn; ++d) {
      const double src = std::max((static_cast<double>(d) + 0.5) * scale - 0.5, 0.0);
      const auto i0 = std::min(static_cast<std::int64_t>(std::floor(src)), in - 1);
      t[d] = Tap{i0, std::min(i0 + 1, in - 1), src - static_cast<double>(i0)};
    }
    return t;
  };
  const std::vector<Tap> ty = taps(in_h, out_h);
  const std::vector<Tap> tx = taps(in_w, out_w);
  for (std::int64_t p = 0; p < planes; ++p) {
    const float* src = xp + p * in_h * in_w;
    float* dst = op + p * out_h * out_w;
    for (std::int64_t y = 0; y < out_h; ++y) {
      const Tap& a = ty[y];
      for (std::int64_t v = 0; v < out_w; ++v) {
        const Tap& b = tx[v];
        const double top = src[a.i0 * in_w + b.i0] * (1.0 - b.frac) + src[a.i0 * in_w + b.i1] * b.frac;
        const double bot = src[a.i1 * in_w + b.i0] * (1.0 - b.frac) + src[a.i1 * in_w + b.i1] * b.frac;
        dst[y * out_w + v] = static_cast<float>(top * (1.0 - a.frac) + bot * a.frac);
      }
    }
  }
  return out;
}

}  // namespace opbench::kernels
