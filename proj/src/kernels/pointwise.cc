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
#include <string>

#include "opbench/errors.h"
#include "opbench/kernels.h"
#include "opbench/simd/dispatch.h"

namespace opbench::kernels {

namespace {

void require_f32(const Tensor& t, const char* what) {
  if (t.dtype() != DType::kF32) throw ShapeMismatch(std::string(what) + " input must be f32");
}

simd::BinaryOp to_binary(ElementwiseKind kind) {
  switch (kind) {
    case ElementwiseKind::kAdd: return simd::BinaryOp::kAdd;
    case ElementwiseKind::kSub: return simd::BinaryOp::kSub;
    case ElementwiseKind::kMul: return simd::BinaryOp::kMul;
    case ElementwiseKind::kDiv: return simd::BinaryOp::kDiv;
    case ElementwiseKind::kNeg: break;
  }
  throw BadAttr("neg is unary");
}

}  // namespace

Tensor softmax(const Tensor& input, std::int64_t dim) {
  require_f32(input, "softmax");
  if (input.rank() == 0) throw ShapeMismatch("softmax of a rank-0 tensor");
  const std::size_t axis = normalize_axis(dim, input.rank());
  std::int64_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= input.dims()[i];
  for (std::size_t i = axis + 1; i < input.rank(); ++i) inner *= input.dims()[i];
  const std::int64_t len = input.dims()[axis];

  Tensor x = input.contiguous();
  Tensor out = Tensor::zeros(input.dims());
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();
  std::vector<double> e(static_cast<std::size_t>(len));
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t in = 0; in < inner; ++in) {
      const std::int64_t base = o * len * inner + in;
      float m = xp[base];
      for (std::int64_t k = 1; k < len; ++k) m = std::max(m, xp[base + k * inner]);
      double total = 0.0;
      for (std::int64_t k = 0; k < len; ++k) {
        e[k] = std::exp(static_cast<double>(xp[base + k * inner]) - static_cast<double>(m));
        total += e[k];
      }
      for (std::int64_t k = 0; k < len; ++k) op[base + k * inner] = static_cast<float>(e[k] / total);
    }
  }
  return out;
}

Tensor activation(ActivationKind kind, const Tensor& input) {
  require_f32(input, "activation");
  Tensor x = input.contiguous();
  Tensor out = Tensor::zeros(input.dims());
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();
  const auto n = static_cast<std::size_t>(input.numel());
  switch (kind) {
    case ActivationKind::kRelu:
      simd::active().relu(xp, op, n);
      break;
    case ActivationKind::kGelu:
      for (std::size_t i = 0; i < n; ++i) {
        const double v = xp[i];
        op[i] = static_cast<float>(0.5 * v * (1.0 + std::erf(v * M_SQRT1_2)));
      }
      break;
    case ActivationKind::kSilu:
      for (std::size_t i = 0; i < n; ++i) {
        const double v = xp[i];
        op[i] = static_cast<float>(v / (1.0 + std::exp(-v)));
      }
      break;
  }
  return out;
}

Tensor elementwise(ElementwiseKind kind, const Tensor& a, const Tensor* b) {
  require_f32(a, "elementwise");
  Tensor x = a.contiguous();
  Tensor out = Tensor::zeros(a.dims());
  const auto n = static_cast<std::size_t>(a.numel());
  const auto& table = simd::active();
  if (kind == ElementwiseKind::kNeg) {
    table.neg(x.f32().data(), out.f32_mut().data(), n);
    return out;
  }
  if (b == nullptr) throw ShapeMismatch("binary elementwise op needs a second operand");
  require_f32(*b, "elementwise");
  if (b->numel() == 1 && b->dims() != a.dims()) {
    table.binary_scalar(to_binary(kind), x.f32().data(), static_cast<float>(b->read(0)), out.f32_mut().data(), n);
    return out;
  }
  Tensor y = b->dims() == a.dims() ? b->contiguous() : expand(*b, a.dims()).contiguous();
  table.binary(to_binary(kind), x.f32().data(), y.f32().data(), out.f32_mut().data(), n);
  return out;
}

Tensor elementwise(ElementwiseKind kind, const Tensor& a, float b) {
  require_f32(a, "elementwise");
  if (kind == ElementwiseKind::kNeg) return elementwise(kind, a, nullptr);
  Tensor x = a.contiguous();
  Tensor out = Tensor::zeros(a.dims());
  simd::active().binary_scalar(to_binary(kind), x.f32().data(), b, out.f32_mut().data(),
                               static_cast<std::size_t>(a.numel()));
  return out;
}

}  // namespace opbench::kernels
