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

#ifndef OPBENCH_OPS_H_
#define OPBENCH_OPS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "opbench/graph.h"
#include "opbench/tensor.h"

namespace opbench {

enum class OpKind {
  kLinear,
  kMatmul,
  kConv1d,
  kConv2d,
  kLayerNorm,
  kBatchNorm,
  kRmsNorm,
  kSoftmax,
  kRelu,
  kGelu,
  kSilu,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kView,
  kReshape,
  kPermute,
  kTranspose,
  kContiguous,
  kSplit,
  kConcat,
  kExpand,
  kSqueeze,
  kUnsqueeze,
  kClone,
  kNms,
  kInterpolate,
};

std::string_view op_kind_name(OpKind kind);

// Maps framework spellings ("LayerNorm", "aten::add.Tensor",
// "transformers.activations.GELUActivation", ...) onto a kernel.
std::optional<OpKind> resolve_op(std::string_view op_name);

struct FlopCount {
  std::int64_t value = 0;
  bool known = false;  // false for ops without a kernel
};

// Counts from the node's specs and attrs alone. MAC = 2 FLOPs; norms 8,
// gelu 15, silu 5, softmax 5, relu and elementwise 1 per element; memory,
// nms and interpolate 0.
FlopCount flop_count(const GraphNode& node);

// A node bound to its kernel. Parameters the node does not receive as inputs
// (weights, batch-norm statistics, nms scores, elementwise operands) are
// taken from attrs when present and otherwise drawn from `seed`, so binding
// is deterministic. run() only executes the kernel.
//
// Attributes read, by op:
//   linear       out_features, bias
//   conv1d/2d    out_channels, kernel_size, stride, padding, bias, method
//   layer_norm   eps, weight, bias
//   batch_norm   eps, running_mean, running_var, weight, bias
//   rms_norm     eps, weight
//   softmax      dim
//   add/sub/...  other (scalar)
//   view/reshape shape         permute dims        transpose dim0, dim1
//   split        split_size | sections, dim        cat dim
//   expand       shape         squeeze dim?        unsqueeze dim
//   nms          iou_threshold, score_threshold
//   interpolate  size | out_h, out_w | scale_factor, mode
class BoundOp {
 public:
  // Throws UnrunnableSpec for op names without a kernel, BadAttr or
  // ShapeMismatch when attrs/specs cannot be bound.
  static BoundOp bind(const GraphNode& node, std::uint64_t seed);

  OpKind kind() const { return kind_; }

  // `inputs` follow node.inputs order.
  std::vector<Tensor> run(std::span<const Tensor> inputs) const;

 private:
  struct Impl;
  BoundOp(OpKind kind, std::shared_ptr<const Impl> impl) : kind_(kind), impl_(std::move(impl)) {}

  OpKind kind_;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace opbench

#endif  // OPBENCH_OPS_H_
