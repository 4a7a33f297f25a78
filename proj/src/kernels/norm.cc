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

#include <cmath>
#include <string>

#include "opbench/errors.h"
#include "opbench/kernels.h"
#include "opbench/simd/dispatch.h"

namespace opbench::kernels {

namespace {

const float* optional_vector(const Tensor* t, std::int64_t expected, const char* what, Tensor& keep) {
  if (t == nullptr) return nullptr;
  if (t->dtype() != DType::kF32 || t->numel() != expected) {
    throw ShapeMismatch(std::string(what) + " must hold " + std::to_string(expected) + " f32 values");
  }
  keep = t->contiguous();
  return keep.f32().data();
}

void require_f32(const Tensor& t, const char* what) {
  if (t.dtype() != DType::kF32) throw ShapeMismatch(std::string(what) + " input must be f32");
  if (t.rank() == 0) throw ShapeMismatch(std::string(what) + " input must have rank >= 1");
}

}  // namespace

Tensor layer_norm(const Tensor& input, float eps, const Tensor* gamma, const Tensor* beta) {
  require_f32(input, "layer_norm");
  const std::int64_t d = input.dims().back();
  Tensor g, b;
  const float* gp = optional_vector(gamma, d, "layer_norm weight", g);
  const float* bp = optional_vector(beta, d, "layer_norm bias", b);
  Tensor x = input.contiguous();
  Tensor out = Tensor::zeros(input.dims());
  const auto& table = simd::active();
  const std::int64_t rows = input.numel() / d;
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();
  const auto n = static_cast<std::size_t>(d);
  for (std::int64_t r = 0; r < rows; ++r) {
    const float* row = xp + r * d;
    const double mean = table.sum(row, n) / static_cast<double>(d);
    const double var = table.sum_sq_dev(row, n, mean) / static_cast<double>(d);
    const auto scale = static_cast<float>(1.0 / std::sqrt(var + static_cast<double>(eps)));
    table.normalize(row, op + r * d, n, static_cast<float>(mean), scale, gp, bp);
  }
  return out;
}

Tensor batch_norm_inference(const Tensor& input, const BatchNormParams& params) {
  require_f32(input, "batch_norm");
  if (input.rank() < 2) throw ShapeMismatch("batch_norm input must have rank >= 2 (channel axis 1)");
  const std::int64_t batch = input.dims()[0];
  const std::int64_t channels = input.dims()[1];
  const auto c = static_cast<std::size_t>(channels);
  auto check = [&](const std::vector<float>& v, const char* name, bool optional) {
    if (v.size() != c && !(optional && v.empty())) {
      throw ShapeMismatch(std::string("batch_norm ") + name + " has " + std::to_string(v.size()) +
                          " values for " + std::to_string(channels) + " channels");
    }
  };
  check(params.mean, "running_mean", false);
  check(params.var, "running_var", false);
  check(params.gamma, "weight", true);
  check(params.beta, "bias", true);

  const std::int64_t inner = input.numel() / (batch * channels);
  std::vector<float> scale(c), shift(c);
  for (std::size_t i = 0; i < c; ++i) {
    if (params.var[i] + params.eps <= 0.0f) {
      throw BadAttr("batch_norm variance + eps must be positive for channel " + std::to_string(i));
    }
    const double g = params.gamma.empty() ? 1.0 : params.gamma[i];
    const double bt = params.beta.empty() ? 0.0 : params.beta[i];
    const double s = g / std::sqrt(static_cast<double>(params.var[i]) + static_cast<double>(params.eps));
    scale[i] = static_cast<float>(s);
    shift[i] = static_cast<float>(bt - static_cast<double>(params.mean[i]) * s);
  }
  Tensor x = input.contiguous();
  Tensor out = Tensor::zeros(input.dims());
  const auto& table = simd::active();
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();
  for (std::int64_t b = 0; b < batch; ++b) {
    for (std::int64_t ch = 0; ch < channels; ++ch) {
      const std::int64_t base = (b * channels + ch) * inner;
      table.scale_shift(xp + base, op + base, static_cast<std::size_t>(inner), scale[ch], shift[ch]);
    }
  }
  return out;
}

Tensor rms_norm(const Tensor& input, float eps, const Tensor* gamma) {
  require_f32(input, "rms_norm");
  const std::int64_t d = input.dims().back();
  Tensor g;
  const float* gp = optional_vector(gamma, d, "rms_norm weight", g);
  Tensor x = input.contiguous();
  Tensor out = Tensor::zeros(input.dims());
  const auto& table = simd::active();
  const std::int64_t rows = input.numel() / d;
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();
  const auto n = static_cast<std::size_t>(d);
  for (std::int64_t r = 0; r < rows; ++r) {
    const float* row = xp + r * d;
    const double ms = table.sum_sq_dev(row, n, 0.0) / static_cast<double>(d);
    const auto scale = static_cast<float>(1.0 / std::sqrt(ms + static_cast<double>(eps)));
    table.normalize(row, op + r * d, n, 0.0f, scale, gp, nullptr);
  }
  return out;
}

}  // namespace opbench::kernels
