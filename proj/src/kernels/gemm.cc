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

#include <string>

#include "opbench/errors.h"
#include "opbench/kernels.h"
#include "opbench/simd/dispatch.h"

namespace opbench::kernels {

namespace {

std::string shape_str(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

void require_f32(const Tensor& t, const char* what) {
  if (t.dtype() != DType::kF32) throw ShapeMismatch(std::string(what) + " must be f32");
}

}  // namespace

Tensor linear(const Tensor& input, const Tensor& weight, const Tensor* bias) {
  require_f32(input, "linear input");
  require_f32(weight, "linear weight");
  if (weight.rank() != 2) throw ShapeMismatch("linear weight must be [N, K], got " + shape_str(weight.dims()));
  const std::int64_t k = input.dims().back();
  const std::int64_t n = weight.dims()[0];
  if (weight.dims()[1] != k) {
    throw ShapeMismatch("linear: input " + shape_str(input.dims()) + " vs weight " + shape_str(weight.dims()));
  }
  if (bias != nullptr && (bias->numel() != n || bias->dtype() != DType::kF32)) {
    throw ShapeMismatch("linear: bias must have " + std::to_string(n) + " f32 elements");
  }
  const std::int64_t m = input.numel() / k;
  Tensor x = input.contiguous();
  Tensor w = weight.contiguous();
  Tensor b = bias != nullptr ? bias->contiguous() : Tensor();

  Dims out_dims = input.dims();
  out_dims.back() = n;
  Tensor out = Tensor::zeros(out_dims);
  simd::active().gemm_nt(x.f32().data(), k, w.f32().data(), k, bias != nullptr ? b.f32().data() : nullptr,
                         out.f32_mut().data(), n, m, n, k);
  return out;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_f32(a, "matmul lhs");
  require_f32(b, "matmul rhs");
  if (a.rank() < 2 || b.rank() < 2) throw ShapeMismatch("matmul operands must have rank >= 2");
  const std::int64_t m = a.dim(-2);
  const std::int64_t k = a.dim(-1);
  const std::int64_t n = b.dim(-1);
  if (b.dim(-2) != k) {
    throw ShapeMismatch("matmul: " + shape_str(a.dims()) + " x " + shape_str(b.dims()));
  }
  Dims batch(a.dims().begin(), a.dims().end() - 2);
  Dims b_batch(b.dims().begin(), b.dims().end() - 2);
  const bool shared_rhs = b.rank() == 2;
  if (!shared_rhs && b_batch != batch) {
    throw ShapeMismatch("matmul batch dims differ: " + shape_str(a.dims()) + " x " + shape_str(b.dims()));
  }
  std::int64_t batches = 1;
  for (std::int64_t d : batch) batches *= d;

  // Pack b^T so the inner loop is a contiguous dot product.
  Tensor bt = transpose(b, -1, -2).contiguous();
  Tensor x = a.contiguous();
  Dims out_dims = batch;
  out_dims.push_back(m);
  out_dims.push_back(n);
  Tensor out = Tensor::zeros(out_dims);
  const float* xp = x.f32().data();
  const float* bp = bt.f32().data();
  float* op = out.f32_mut().data();
  const auto& table = simd::active();
  for (std::int64_t i = 0; i < batches; ++i) {
    const float* rhs = shared_rhs ? bp : bp + i * n * k;
    table.gemm_nt(xp + i * m * k, k, rhs, k, nullptr, op + i * m * n, n, m, n, k);
  }
  return out;
}

std::int64_t conv_out_size(std::int64_t in, std::int64_t kernel, std::int64_t stride, std::int64_t pad) {
  if (stride < 1) throw BadAttr("conv stride must be >= 1, got " + std::to_string(stride));
  if (pad < 0) throw BadAttr("conv padding must be >= 0, got " + std::to_string(pad));
  const std::int64_t span = in + 2 * pad - kernel;
  if (span < 0) {
    throw ShapeMismatch("conv kernel " + std::to_string(kernel) + " larger than padded input " +
                        std::to_string(in + 2 * pad));
  }
  return span / stride + 1;
}

Tensor conv1d(const Tensor& input, const Tensor& weight, const Tensor* bias, const ConvParams& params) {
  require_f32(input, "conv1d input");
  require_f32(weight, "conv1d weight");
  if (input.rank() != 3 || weight.rank() != 3) {
    throw ShapeMismatch("conv1d expects input [B,Cin,L] and weight [Cout,Cin,Kl]");
  }
  const std::int64_t batch = input.dims()[0], cin = input.dims()[1], len = input.dims()[2];
  const std::int64_t cout = weight.dims()[0], kl = weight.dims()[2];
  if (weight.dims()[1] != cin) {
    throw ShapeMismatch("conv1d: input " + shape_str(input.dims()) + " vs weight " + shape_str(weight.dims()));
  }
  if (bias != nullptr && bias->numel() != cout) throw ShapeMismatch("conv1d: bias length != Cout");
  const std::int64_t stride = params.stride_w, pad = params.pad_w;
  const std::int64_t lout = conv_out_size(len, kl, stride, pad);

  Tensor x = input.contiguous();
  Tensor w = weight.contiguous();
  Tensor bc = bias != nullptr ? bias->contiguous() : Tensor();
  Tensor out = Tensor::zeros({batch, cout, lout});
  const float* xp = x.f32().data();
  const float* wp = w.f32().data();
  float* op = out.f32_mut().data();
  for (std::int64_t b = 0; b < batch; ++b) {
    for (std::int64_t co = 0; co < cout; ++co) {
      for (std::int64_t o = 0; o < lout; ++o) {
        float acc = 0.0f;
        for (std::int64_t ci = 0; ci < cin; ++ci) {
          const float* xrow = xp + (b * cin + ci) * len;
          const float* wrow = wp + (co * cin + ci) * kl;
          for (std::int64_t t = 0; t < kl; ++t) {
            const std::int64_t pos = o * stride + t - pad;
            if (pos >= 0 && pos < len) acc += xrow[pos] * wrow[t];
          }
        }
        if (bias != nullptr) acc += bc.f32()[static_cast<std::size_t>(co)];
        op[(b * cout + co) * lout + o] = acc;
      }
    }
  }
  return out;
}

namespace {

Tensor conv2d_direct(const Tensor& x, const Tensor& w, const float* bias, const ConvParams& p,
                     std::int64_t hout, std::int64_t wout) {
  const std::int64_t batch = x.dims()[0], cin = x.dims()[1], h = x.dims()[2], wd = x.dims()[3];
  const std::int64_t cout = w.dims()[0], kh = w.dims()[2], kw = w.dims()[3];
  Tensor out = Tensor::zeros({batch, cout, hout, wout});
  const float* xp = x.f32().data();
  const float* wp = w.f32().data();
  float* op = out.f32_mut().data();
  for (std::int64_t b = 0; b < batch; ++b) {
    for (std::int64_t co = 0; co < cout; ++co) {
      for (std::int64_t oy = 0; oy < hout; ++oy) {
        for (std::int64_t ox = 0; ox < wout; ++ox) {
          float acc = 0.0f;
          for (std::int64_t ci = 0; ci < cin; ++ci) {
            for (std::int64_t ky = 0; ky < kh; ++ky) {
              const std::int64_t iy = oy * p.stride_h + ky - p.pad_h;
              if (iy < 0 || iy >= h) continue;
              for (std::int64_t kx = 0; kx < kw; ++kx) {
                const std::int64_t ix = ox * p.stride_w + kx - p.pad_w;
                if (ix < 0 || ix >= wd) continue;
                acc += xp[((b * cin + ci) * h + iy) * wd + ix] * wp[((co * cin + ci) * kh + ky) * kw + kx];
              }
            }
          }
          if (bias != nullptr) acc += bias[co];
          op[((b * cout + co) * hout + oy) * wout + ox] = acc;
        }
      }
    }
  }
  return out;
}

// Unfolds each image into columns [Hout*Wout, Cin*Kh*Kw], then one GEMM per
// image: weight [Cout, Cin*Kh*Kw] against the columns gives [Cout, Hout*Wout].
Tensor conv2d_im2col(const Tensor& x, const Tensor& w, const float* bias, const ConvParams& p,
                     std::int64_t hout, std::int64_t wout) {
  const std::int64_t batch = x.dims()[0], cin = x.dims()[1], h = x.dims()[2], wd = x.dims()[3];
  const std::int64_t cout = w.dims()[0], kh = w.dims()[2], kw = w.dims()[3];
  const std::int64_t patch = cin * kh * kw;
  const std::int64_t pixels = hout * wout;
  Tensor out = Tensor::zeros({batch, cout, hout, wout});
  std::vector<float> cols(static_cast<std::size_t>(pixels * patch));
  const float* xp = x.f32().data();
  float* op = out.f32_mut().data();
  const auto& table = simd::active();
  for (std::int64_t b = 0; b < batch; ++b) {
    for (std::int64_t oy = 0; oy < hout; ++oy) {
      for (std::int64_t ox = 0; ox < wout; ++ox) {
        float* col = cols.data() + (oy * wout + ox) * patch;
        for (std::int64_t ci = 0; ci < cin; ++ci) {
          for (std::int64_t ky = 0; ky < kh; ++ky) {
            const std::int64_t iy = oy * p.stride_h + ky - p.pad_h;
            for (std::int64_t kx = 0; kx < kw; ++kx) {
              const std::int64_t ix = ox * p.stride_w + kx - p.pad_w;
              const bool inside = iy >= 0 && iy < h && ix >= 0 && ix < wd;
              *col++ = inside ? xp[((b * cin + ci) * h + iy) * wd + ix] : 0.0f;
            }
          }
        }
      }
    }
    float* dst = op + b * cout * pixels;
    table.gemm_nt(w.f32().data(), patch, cols.data(), patch, nullptr, dst, pixels, cout, pixels, patch);
    if (bias != nullptr) {
      for (std::int64_t co = 0; co < cout; ++co) {
        table.binary_scalar(simd::BinaryOp::kAdd, dst + co * pixels, bias[co], dst + co * pixels,
                            static_cast<std::size_t>(pixels));
      }
    }
  }
  return out;
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor* bias, const ConvParams& params,
              ConvMethod method) {
  require_f32(input, "conv2d input");
  require_f32(weight, "conv2d weight");
  if (input.rank() != 4 || weight.rank() != 4) {
    throw ShapeMismatch("conv2d expects input [B,Cin,H,W] and weight [Cout,Cin,Kh,Kw]");
  }
  if (weight.dims()[1] != input.dims()[1]) {
    throw ShapeMismatch("conv2d: input " + shape_str(input.dims()) + " vs weight " + shape_str(weight.dims()));
  }
  if (bias != nullptr && bias->numel() != weight.dims()[0]) throw ShapeMismatch("conv2d: bias length != Cout");
  const std::int64_t hout = conv_out_size(input.dims()[2], weight.dims()[2], params.stride_h, params.pad_h);
  const std::int64_t wout = conv_out_size(input.dims()[3], weight.dims()[3], params.stride_w, params.pad_w);
  Tensor x = input.contiguous();
  Tensor w = weight.contiguous();
  Tensor b = bias != nullptr ? bias->contiguous() : Tensor();
  const float* bp = bias != nullptr ? b.f32().data() : nullptr;
  return method == ConvMethod::kDirect ? conv2d_direct(x, w, bp, params, hout, wout)
                                       : conv2d_im2col(x, w, bp, params, hout, wout);
}

}  // namespace opbench::kernels
