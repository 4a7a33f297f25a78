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

#include "opbench/ops.h"

#include <cmath>
#include <string>
#include <unordered_map>

#include "opbench/errors.h"
#include "opbench/kernels.h"
#include "opbench/random.h"
#include "opbench/taxonomy.h"

namespace opbench {

namespace k = kernels;

namespace {

struct NamedKind {
  const char* name;
  OpKind kind;
};

constexpr NamedKind kSpellings[] = {
    {"linear", OpKind::kLinear},
    {"matmul", OpKind::kMatmul},
    {"bmm", OpKind::kMatmul},
    {"mm", OpKind::kMatmul},
    {"conv1d", OpKind::kConv1d},
    {"conv2d", OpKind::kConv2d},
    {"layernorm", OpKind::kLayerNorm},
    {"layer_norm", OpKind::kLayerNorm},
    {"batchnorm2d", OpKind::kBatchNorm},
    {"frozenbatchnorm2d", OpKind::kBatchNorm},
    {"batch_norm", OpKind::kBatchNorm},
    {"llamarmsnorm", OpKind::kRmsNorm},
    {"rmsnorm", OpKind::kRmsNorm},
    {"rms_norm", OpKind::kRmsNorm},
    {"softmax", OpKind::kSoftmax},
    {"_softmax", OpKind::kSoftmax},
    {"relu", OpKind::kRelu},
    {"relu_", OpKind::kRelu},
    {"gelu", OpKind::kGelu},
    {"geluactivation", OpKind::kGelu},
    {"silu", OpKind::kSilu},
    {"silu_", OpKind::kSilu},
    {"add", OpKind::kAdd},
    {"add_", OpKind::kAdd},
    {"iadd", OpKind::kAdd},
    {"sub", OpKind::kSub},
    {"mul", OpKind::kMul},
    {"mul_", OpKind::kMul},
    {"div", OpKind::kDiv},
    {"div_", OpKind::kDiv},
    {"true_divide", OpKind::kDiv},
    {"truediv", OpKind::kDiv},
    {"neg", OpKind::kNeg},
    {"view", OpKind::kView},
    {"_unsafe_view", OpKind::kView},
    {"reshape", OpKind::kReshape},
    {"permute", OpKind::kPermute},
    {"transpose", OpKind::kTranspose},
    {"contiguous", OpKind::kContiguous},
    {"split", OpKind::kSplit},
    {"split_with_sizes", OpKind::kSplit},
    {"cat", OpKind::kConcat},
    {"concat", OpKind::kConcat},
    {"expand", OpKind::kExpand},
    {"squeeze", OpKind::kSqueeze},
    {"unsqueeze", OpKind::kUnsqueeze},
    {"clone", OpKind::kClone},
    {"nms", OpKind::kNms},
    {"interpolate", OpKind::kInterpolate},
    {"upsample", OpKind::kInterpolate},
    {"upsample_nearest2d", OpKind::kInterpolate},
    {"upsample_bilinear2d", OpKind::kInterpolate},
};

std::string dims_str(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

std::int64_t numel_of(const Dims& dims) {
  std::int64_t n = 1;
  for (std::int64_t d : dims) n *= d;
  return n;
}

// Two-value spatial attrs ("stride": 2 or [2, 1]).
std::pair<std::int64_t, std::int64_t> pair_attr(const AttrMap& attrs, const std::string& key, std::int64_t dflt) {
  auto v = attr_ints(attrs, key);
  if (!v) return {dflt, dflt};
  if (v->size() == 1) return {(*v)[0], (*v)[0]};
  if (v->size() == 2) return {(*v)[0], (*v)[1]};
  throw BadAttr("attribute '" + key + "' must hold one or two integers");
}

const Dims& input_dims(const GraphNode& node, std::size_t k) {
  if (k >= node.input_specs.size()) {
    throw ShapeMismatch("node '" + node.id + "' needs input_specs[" + std::to_string(k) + "]");
  }
  return node.input_specs[k].dims;
}

std::optional<Dims> output_dims(const GraphNode& node) {
  if (node.output_specs.empty()) return std::nullopt;
  return node.output_specs[0].dims;
}

std::int64_t linear_out_features(const GraphNode& node) {
  if (auto n = attr_int(node.attrs, "out_features")) return *n;
  if (node.input_specs.size() >= 2) return node.input_specs[1].dims[0];
  if (auto out = output_dims(node)) return out->back();
  throw BadAttr("linear node '" + node.id + "' needs out_features, a weight input, or an output spec");
}

std::int64_t conv_out_channels(const GraphNode& node) {
  if (auto n = attr_int(node.attrs, "out_channels")) return *n;
  if (node.input_specs.size() >= 2) return node.input_specs[1].dims[0];
  if (auto out = output_dims(node); out && out->size() >= 2) return (*out)[1];
  throw BadAttr("conv node '" + node.id + "' needs out_channels, a weight input, or an output spec");
}

// Kernel extent: from a fed weight when present, else the kernel_size attr.
Dims conv_kernel(const GraphNode& node, std::size_t spatial) {
  if (node.input_specs.size() >= 2) {
    const Dims& w = node.input_specs[1].dims;
    return Dims(w.begin() + 2, w.end());
  }
  auto ks = attr_ints(node.attrs, "kernel_size");
  if (!ks) throw BadAttr("conv node '" + node.id + "' needs kernel_size or a weight input");
  if (ks->size() == 1) return Dims(spatial, (*ks)[0]);
  if (ks->size() != spatial) throw BadAttr("kernel_size rank does not match the conv");
  return *ks;
}

bool has_bias(const GraphNode& node) {
  if (node.input_specs.size() >= 3) return true;
  return attr_int(node.attrs, "bias").value_or(0) != 0;
}

Tensor float_param(const AttrMap& attrs, const std::string& key, std::int64_t expected) {
  auto v = attr_doubles(attrs, key);
  if (!v) return {};
  if (static_cast<std::int64_t>(v->size()) != expected) {
    throw BadAttr("attribute '" + key + "' has " + std::to_string(v->size()) + " values, expected " +
                  std::to_string(expected));
  }
  return Tensor::from_vector({expected}, std::vector<float>(v->begin(), v->end()));
}

std::vector<float> float_list(const AttrMap& attrs, const std::string& key, std::size_t expected, Rng& rng,
                              float lo, float hi) {
  auto v = attr_doubles(attrs, key);
  if (!v) return rng.fill(expected, lo, hi);
  if (v->size() != expected) {
    throw BadAttr("attribute '" + key + "' has " + std::to_string(v->size()) + " values, expected " +
                  std::to_string(expected));
  }
  return std::vector<float>(v->begin(), v->end());
}

}  // namespace

std::string_view op_kind_name(OpKind kind) {
  switch (kind) {
    case OpKind::kLinear: return "linear";
    case OpKind::kMatmul: return "matmul";
    case OpKind::kConv1d: return "conv1d";
    case OpKind::kConv2d: return "conv2d";
    case OpKind::kLayerNorm: return "layer_norm";
    case OpKind::kBatchNorm: return "batch_norm";
    case OpKind::kRmsNorm: return "rms_norm";
    case OpKind::kSoftmax: return "softmax";
    case OpKind::kRelu: return "relu";
    case OpKind::kGelu: return "gelu";
    case OpKind::kSilu: return "silu";
    case OpKind::kAdd: return "add";
    case OpKind::kSub: return "sub";
    case OpKind::kMul: return "mul";
    case OpKind::kDiv: return "div";
    case OpKind::kNeg: return "neg";
    case OpKind::kView: return "view";
    case OpKind::kReshape: return "reshape";
    case OpKind::kPermute: return "permute";
    case OpKind::kTranspose: return "transpose";
    case OpKind::kContiguous: return "contiguous";
    case OpKind::kSplit: return "split";
    case OpKind::kConcat: return "cat";
    case OpKind::kExpand: return "expand";
    case OpKind::kSqueeze: return "squeeze";
    case OpKind::kUnsqueeze: return "unsqueeze";
    case OpKind::kClone: return "clone";
    case OpKind::kNms: return "nms";
    case OpKind::kInterpolate: return "interpolate";
  }
  return "?";
}

std::optional<OpKind> resolve_op(std::string_view op_name) {
  static const auto* table = [] {
    auto* m = new std::unordered_map<std::string, OpKind>();
    for (const auto& s : kSpellings) m->emplace(s.name, s.kind);
    return m;
  }();
  auto it = table->find(normalize_op_name(op_name));
  if (it == table->end()) return std::nullopt;
  return it->second;
}

FlopCount flop_count(const GraphNode& node) {
  auto kind = resolve_op(node.op_name);
  if (!kind) return {0, false};
  auto in0 = [&]() -> std::int64_t { return numel_of(input_dims(node, 0)); };
  auto out0 = [&]() -> std::int64_t {
    if (auto out = output_dims(node)) return numel_of(*out);
    return in0();
  };
  switch (*kind) {
    case OpKind::kLinear: {
      const Dims& x = input_dims(node, 0);
      const std::int64_t kdim = x.back();
      const std::int64_t m = numel_of(x) / kdim;
      const std::int64_t n = linear_out_features(node);
      return {2 * m * n * kdim + (has_bias(node) ? m * n : 0), true};
    }
    case OpKind::kMatmul: {
      const Dims& a = input_dims(node, 0);
      const Dims& b = input_dims(node, 1);
      std::int64_t batch = numel_of(a) / (a[a.size() - 2] * a.back());
      return {2 * batch * a[a.size() - 2] * b.back() * a.back(), true};
    }
    case OpKind::kConv1d:
    case OpKind::kConv2d: {
      const Dims& x = input_dims(node, 0);
      const std::size_t spatial = *kind == OpKind::kConv1d ? 1 : 2;
      if (x.size() != spatial + 2) throw ShapeMismatch("conv node '" + node.id + "' input rank");
      const Dims kernel = conv_kernel(node, spatial);
      const std::int64_t cout = conv_out_channels(node);
      std::int64_t out_elems = x[0] * cout;
      std::int64_t taps = x[1];
      const auto stride = pair_attr(node.attrs, "stride", 1);
      const auto pad = pair_attr(node.attrs, "padding", 0);
      for (std::size_t s = 0; s < spatial; ++s) {
        const bool h = spatial == 2 && s == 0;
        out_elems *= k::conv_out_size(x[2 + s], kernel[s], h ? stride.first : stride.second,
                                      h ? pad.first : pad.second);
        taps *= kernel[s];
      }
      return {2 * out_elems * taps + (has_bias(node) ? out_elems : 0), true};
    }
    case OpKind::kLayerNorm:
    case OpKind::kBatchNorm:
    case OpKind::kRmsNorm:
      return {8 * in0(), true};
    case OpKind::kSoftmax:
      return {5 * in0(), true};
    case OpKind::kRelu:
      return {in0(), true};
    case OpKind::kGelu:
      return {15 * in0(), true};
    case OpKind::kSilu:
      return {5 * in0(), true};
    case OpKind::kAdd:
    case OpKind::kSub:
    case OpKind::kMul:
    case OpKind::kDiv:
    case OpKind::kNeg:
      return {out0(), true};
    default:
      return {0, true};
  }
}

struct BoundOp::Impl {
  std::string node_id;
  OpKind kind;
  std::size_t fed = 0;  // tensors supplied by the graph

  // GEMM family.
  Tensor weight, bias;
  k::ConvParams conv;
  k::ConvMethod conv_method = k::ConvMethod::kIm2col;

  // Normalization.
  float eps = 0.0f;
  Tensor gamma, beta;
  k::BatchNormParams bn;

  // Elementwise second operand: either a scalar or a synthesized tensor.
  std::optional<float> scalar;
  Tensor other;

  std::int64_t dim = -1;
  std::optional<std::int64_t> opt_dim;
  Dims shape;
  std::optional<std::int64_t> split_size;

  k::NmsParams nms;
  Tensor scores;

  std::int64_t out_h = 0, out_w = 0;
  k::InterpolationMode mode = k::InterpolationMode::kNearest;
};

BoundOp BoundOp::bind(const GraphNode& node, std::uint64_t seed) {
  auto kind = resolve_op(node.op_name);
  if (!kind) throw UnrunnableSpec("no kernel for operator '" + node.op_name + "'");
  auto impl = std::make_shared<Impl>();
  impl->node_id = node.id;
  impl->kind = *kind;
  impl->fed = std::max(node.inputs.size(), node.input_specs.size());
  Rng rng(derive_seed(seed, node.id));
  const AttrMap& attrs = node.attrs;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (impl->fed < lo || impl->fed > hi) {
      throw ShapeMismatch("operator '" + node.op_name + "' takes " + std::to_string(lo) +
                          (hi != lo ? "-" + std::to_string(hi) : std::string()) + " inputs, node '" + node.id +
                          "' has " + std::to_string(impl->fed));
    }
  };

  switch (*kind) {
    case OpKind::kLinear: {
      need(1, 3);
      const Dims& x = input_dims(node, 0);
      const std::int64_t kdim = x.back();
      if (auto in = attr_int(attrs, "in_features"); in && *in != kdim) {
        throw ShapeMismatch("linear node '" + node.id + "': in_features " + std::to_string(*in) +
                            " vs input " + dims_str(x));
      }
      const std::int64_t n = linear_out_features(node);
      const float bound = 1.0f / std::sqrt(static_cast<float>(kdim));
      if (impl->fed < 2) impl->weight = rng.tensor({n, kdim}, -bound, bound);
      if (impl->fed < 3 && has_bias(node)) impl->bias = rng.tensor({n}, -bound, bound);
      break;
    }
    case OpKind::kMatmul:
      need(2, 2);
      break;
    case OpKind::kConv1d:
    case OpKind::kConv2d: {
      need(1, 3);
      const std::size_t spatial = *kind == OpKind::kConv1d ? 1 : 2;
      const Dims& x = input_dims(node, 0);
      if (x.size() != spatial + 2) {
        throw ShapeMismatch("conv node '" + node.id + "' input " + dims_str(x) + " has the wrong rank");
      }
      const auto stride = pair_attr(attrs, "stride", 1);
      const auto pad = pair_attr(attrs, "padding", 0);
      impl->conv = k::ConvParams{stride.first, stride.second, pad.first, pad.second};
      if (spatial == 1) {
        impl->conv.stride_w = stride.first;
        impl->conv.pad_w = pad.first;
      }
      if (auto m = attr_string(attrs, "method")) {
        if (*m == "direct") {
          impl->conv_method = k::ConvMethod::kDirect;
        } else if (*m != "im2col") {
          throw BadAttr("conv method must be 'direct' or 'im2col', got '" + *m + "'");
        }
      }
      const Dims kernel = conv_kernel(node, spatial);
      const std::int64_t cout = conv_out_channels(node);
      Dims wdims{cout, x[1]};
      wdims.insert(wdims.end(), kernel.begin(), kernel.end());
      const float bound = 1.0f / std::sqrt(static_cast<float>(numel_of(wdims) / cout));
      if (impl->fed < 2) impl->weight = rng.tensor(wdims, -bound, bound);
      if (impl->fed < 3 && has_bias(node)) impl->bias = rng.tensor({cout}, -bound, bound);
      break;
    }
    case OpKind::kLayerNorm: {
      need(1, 3);
      const std::int64_t d = input_dims(node, 0).back();
      impl->eps = static_cast<float>(attr_double(attrs, "eps").value_or(k::kLayerNormEps));
      if (impl->fed < 2) impl->gamma = float_param(attrs, "weight", d);
      if (impl->fed < 3) impl->beta = float_param(attrs, "bias", d);
      break;
    }
    case OpKind::kBatchNorm: {
      need(1, 1);
      const Dims& x = input_dims(node, 0);
      if (x.size() < 2) throw ShapeMismatch("batch_norm node '" + node.id + "' needs rank >= 2");
      const auto c = static_cast<std::size_t>(x[1]);
      impl->bn.eps = static_cast<float>(attr_double(attrs, "eps").value_or(k::kLayerNormEps));
      impl->bn.mean = float_list(attrs, "running_mean", c, rng, -0.5f, 0.5f);
      impl->bn.var = float_list(attrs, "running_var", c, rng, 0.5f, 1.5f);
      impl->bn.gamma = float_list(attrs, "weight", c, rng, 0.5f, 1.5f);
      impl->bn.beta = float_list(attrs, "bias", c, rng, -0.5f, 0.5f);
      break;
    }
    case OpKind::kRmsNorm: {
      need(1, 2);
      impl->eps = static_cast<float>(attr_double(attrs, "eps").value_or(k::kRmsNormEps));
      if (impl->fed < 2) impl->gamma = float_param(attrs, "weight", input_dims(node, 0).back());
      break;
    }
    case OpKind::kSoftmax:
      need(1, 1);
      impl->dim = attr_int(attrs, "dim").value_or(-1);
      normalize_axis(impl->dim, input_dims(node, 0).size());
      break;
    case OpKind::kRelu:
    case OpKind::kGelu:
    case OpKind::kSilu:
    case OpKind::kNeg:
    case OpKind::kContiguous:
    case OpKind::kClone:
      need(1, 1);
      break;
    case OpKind::kAdd:
    case OpKind::kSub:
    case OpKind::kMul:
    case OpKind::kDiv:
      need(1, 2);
      if (impl->fed == 1) {
        if (auto s = attr_double(attrs, "other")) {
          impl->scalar = static_cast<float>(*s);
        } else if (*kind == OpKind::kDiv) {
          // Keep divisors away from zero.
          impl->other = rng.tensor(input_dims(node, 0), 1.0f, 2.0f);
        } else {
          impl->other = rng.tensor(input_dims(node, 0));
        }
      }
      break;
    case OpKind::kView:
    case OpKind::kReshape:
    case OpKind::kExpand: {
      need(1, 1);
      auto s = attr_ints(attrs, "shape");
      if (!s) s = attr_ints(attrs, "size");
      if (!s && output_dims(node)) s = *output_dims(node);
      if (!s) throw BadAttr("node '" + node.id + "' needs a 'shape' attribute");
      impl->shape = *s;
      break;
    }
    case OpKind::kPermute: {
      need(1, 1);
      auto d = attr_ints(attrs, "dims");
      if (!d) throw BadAttr("permute node '" + node.id + "' needs a 'dims' attribute");
      impl->shape = *d;
      break;
    }
    case OpKind::kTranspose: {
      need(1, 1);
      auto d0 = attr_int(attrs, "dim0");
      auto d1 = attr_int(attrs, "dim1");
      if (!d0 || !d1) throw BadAttr("transpose node '" + node.id + "' needs dim0 and dim1");
      impl->shape = {*d0, *d1};
      break;
    }
    case OpKind::kSplit: {
      need(1, 1);
      impl->dim = attr_int(attrs, "dim").value_or(0);
      if (auto sections = attr_ints(attrs, "sections"); sections && sections->size() > 1) {
        impl->shape = *sections;
      } else if (auto size = attr_int(attrs, "split_size")) {
        impl->split_size = *size;
      } else if (sections) {
        impl->split_size = (*sections)[0];
      } else {
        throw BadAttr("split node '" + node.id + "' needs split_size or sections");
      }
      break;
    }
    case OpKind::kConcat:
      need(1, 64);
      impl->dim = attr_int(attrs, "dim").value_or(0);
      break;
    case OpKind::kSqueeze:
      need(1, 1);
      impl->opt_dim = attr_int(attrs, "dim");
      break;
    case OpKind::kUnsqueeze: {
      need(1, 1);
      auto d = attr_int(attrs, "dim");
      if (!d) throw BadAttr("unsqueeze node '" + node.id + "' needs 'dim'");
      impl->dim = *d;
      break;
    }
    case OpKind::kNms: {
      need(1, 2);
      impl->nms.iou_threshold = static_cast<float>(attr_double(attrs, "iou_threshold").value_or(0.5));
      impl->nms.score_threshold = static_cast<float>(attr_double(attrs, "score_threshold").value_or(0.0));
      for (float t : {impl->nms.iou_threshold, impl->nms.score_threshold}) {
        if (!(t >= 0.0f && t <= 1.0f)) throw BadAttr("nms thresholds must lie in [0, 1]");
      }
      const Dims& boxes = input_dims(node, 0);
      if (boxes.size() != 2 || boxes[1] != 4) throw ShapeMismatch("nms boxes must be [N, 4], got " + dims_str(boxes));
      if (impl->fed < 2) impl->scores = rng.tensor({boxes[0]}, 0.0f, 1.0f);
      break;
    }
    case OpKind::kInterpolate: {
      need(1, 1);
      const Dims& x = input_dims(node, 0);
      if (x.size() != 4) throw ShapeMismatch("interpolate node '" + node.id + "' needs [B, C, H, W]");
      if (auto size = attr_ints(attrs, "size")) {
        if (size->size() == 1) size->push_back(size->front());
        if (size->size() != 2) throw BadAttr("interpolate size must hold one or two integers");
        impl->out_h = (*size)[0];
        impl->out_w = (*size)[1];
      } else if (auto oh = attr_int(attrs, "out_h")) {
        impl->out_h = *oh;
        impl->out_w = attr_int(attrs, "out_w").value_or(*oh);
      } else if (auto sf = attr_doubles(attrs, "scale_factor")) {
        const double sh = (*sf)[0];
        const double sw = sf->size() > 1 ? (*sf)[1] : sh;
        impl->out_h = static_cast<std::int64_t>(std::floor(static_cast<double>(x[2]) * sh));
        impl->out_w = static_cast<std::int64_t>(std::floor(static_cast<double>(x[3]) * sw));
      } else if (auto out = output_dims(node); out && out->size() == 4) {
        impl->out_h = (*out)[2];
        impl->out_w = (*out)[3];
      } else {
        throw BadAttr("interpolate node '" + node.id + "' needs size, out_h/out_w or scale_factor");
      }
      if (impl->out_h < 1 || impl->out_w < 1) throw BadAttr("interpolate output size must be positive");
      const std::string mode = attr_string(attrs, "mode").value_or("nearest");
      if (mode == "bilinear") {
        impl->mode = k::InterpolationMode::kBilinear;
      } else if (mode != "nearest") {
        throw BadAttr("interpolate mode must be 'nearest' or 'bilinear', got '" + mode + "'");
      }
      break;
    }
  }
  return BoundOp(*kind, std::move(impl));
}

std::vector<Tensor> BoundOp::run(std::span<const Tensor> in) const {
  const Impl& p = *impl_;
  if (in.size() != p.fed) {
    throw ShapeMismatch("node '" + p.node_id + "' expects " + std::to_string(p.fed) + " inputs, got " +
                        std::to_string(in.size()));
  }
  for (const Tensor& t : in) {
    if (!t.defined()) throw ShapeMismatch("node '" + p.node_id + "' received an empty tensor");
  }
  auto param = [&](std::size_t idx, const Tensor& own) -> const Tensor* {
    if (idx < in.size()) return &in[idx];
    return own.defined() ? &own : nullptr;
  };
  switch (p.kind) {
    case OpKind::kLinear:
      return {k::linear(in[0], *param(1, p.weight), param(2, p.bias))};
    case OpKind::kMatmul:
      return {k::matmul(in[0], in[1])};
    case OpKind::kConv1d:
      return {k::conv1d(in[0], *param(1, p.weight), param(2, p.bias), p.conv)};
    case OpKind::kConv2d:
      return {k::conv2d(in[0], *param(1, p.weight), param(2, p.bias), p.conv, p.conv_method)};
    case OpKind::kLayerNorm:
      return {k::layer_norm(in[0], p.eps, param(1, p.gamma), param(2, p.beta))};
    case OpKind::kBatchNorm:
      return {k::batch_norm_inference(in[0], p.bn)};
    case OpKind::kRmsNorm:
      return {k::rms_norm(in[0], p.eps, param(1, p.gamma))};
    case OpKind::kSoftmax:
      return {k::softmax(in[0], p.dim)};
    case OpKind::kRelu:
      return {k::activation(k::ActivationKind::kRelu, in[0])};
    case OpKind::kGelu:
      return {k::activation(k::ActivationKind::kGelu, in[0])};
    case OpKind::kSilu:
      return {k::activation(k::ActivationKind::kSilu, in[0])};
    case OpKind::kAdd:
    case OpKind::kSub:
    case OpKind::kMul:
    case OpKind::kDiv: {
      const auto ek = p.kind == OpKind::kAdd   ? k::ElementwiseKind::kAdd
                      : p.kind == OpKind::kSub ? k::ElementwiseKind::kSub
                      : p.kind == OpKind::kMul ? k::ElementwiseKind::kMul
                                               : k::ElementwiseKind::kDiv;
      if (p.scalar) return {k::elementwise(ek, in[0], *p.scalar)};
      return {k::elementwise(ek, in[0], param(1, p.other))};
    }
    case OpKind::kNeg:
      return {k::elementwise(k::ElementwiseKind::kNeg, in[0])};
    case OpKind::kView:
      return {k::view(in[0], p.shape)};
    case OpKind::kReshape:
      return {k::reshape(in[0], p.shape)};
    case OpKind::kExpand:
      return {k::expand(in[0], p.shape)};
    case OpKind::kPermute:
      return {k::permute(in[0], p.shape)};
    case OpKind::kTranspose:
      return {k::transpose(in[0], p.shape[0], p.shape[1])};
    case OpKind::kContiguous:
      return {k::contiguous(in[0])};
    case OpKind::kClone:
      return {in[0].clone()};
    case OpKind::kSplit:
      return p.split_size ? k::split(in[0], *p.split_size, p.dim) : k::split_sections(in[0], p.shape, p.dim);
    case OpKind::kConcat:
      return {k::concat(in, p.dim)};
    case OpKind::kSqueeze:
      return {p.opt_dim ? k::squeeze(in[0], *p.opt_dim) : k::squeeze(in[0])};
    case OpKind::kUnsqueeze:
      return {k::unsqueeze(in[0], p.dim)};
    case OpKind::kNms:
      return {k::nms(in[0], *param(1, p.scores), p.nms)};
    case OpKind::kInterpolate:
      return {k::interpolate(in[0], p.out_h, p.out_w, p.mode)};
  }
  return {};
}

}  // namespace opbench
