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
#include <string>

#include "opbench/errors.h"
#include "opbench/kernels.h"

namespace opbench::kernels {

namespace {

std::string shape_str(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

// Resolves a single -1 against `numel`.
Dims infer_shape(const Dims& shape, std::int64_t numel) {
  Dims out = shape;
  std::int64_t known = 1;
  int wildcard = -1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == -1) {
      if (wildcard >= 0) throw BadAttr("only one -1 allowed in " + shape_str(shape));
      wildcard = static_cast<int>(i);
    } else if (out[i] < 1) {
      throw BadAttr("invalid target dim in " + shape_str(shape));
    } else {
      known *= out[i];
    }
  }
  if (wildcard >= 0) {
    if (numel % known != 0) throw ShapeMismatch("cannot infer -1 in " + shape_str(shape));
    out[static_cast<std::size_t>(wildcard)] = numel / known;
  }
  std::int64_t total = 1;
  for (std::int64_t d : out) total *= d;
  if (total != numel) {
    throw ShapeMismatch("shape " + shape_str(shape) + " is invalid for " + std::to_string(numel) + " elements");
  }
  return out;
}

}  // namespace

Tensor view(const Tensor& input, const Dims& shape) {
  Dims dims = infer_shape(shape, input.numel());
  if (!input.is_contiguous()) {
    throw ShapeMismatch("view of a non-contiguous tensor " + shape_str(input.dims()) + "; use reshape");
  }
  return Tensor::view_of(input, dims, contiguous_strides(dims), input.offset());
}

Tensor reshape(const Tensor& input, const Dims& shape) {
  Dims dims = infer_shape(shape, input.numel());
  if (input.is_contiguous()) return Tensor::view_of(input, dims, contiguous_strides(dims), input.offset());
  Tensor packed = input.clone();
  return Tensor::view_of(packed, dims, contiguous_strides(dims), 0, false);
}

Tensor permute(const Tensor& input, const Dims& axes) {
  if (axes.size() != input.rank()) {
    throw BadAttr("permute needs " + std::to_string(input.rank()) + " axes, got " + shape_str(axes));
  }
  std::vector<bool> seen(input.rank(), false);
  Dims dims(input.rank()), strides(input.rank());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::size_t ax = normalize_axis(axes[i], input.rank());
    if (seen[ax]) throw BadAttr("permute axes " + shape_str(axes) + " repeat an axis");
    seen[ax] = true;
    dims[i] = input.dims()[ax];
    strides[i] = input.strides()[ax];
  }
  return Tensor::view_of(input, dims, strides, input.offset());
}

Tensor transpose(const Tensor& input, std::int64_t dim0, std::int64_t dim1) {
  Dims axes(input.rank());
  for (std::size_t i = 0; i < axes.size(); ++i) axes[i] = static_cast<std::int64_t>(i);
  std::swap(axes[normalize_axis(dim0, input.rank())], axes[normalize_axis(dim1, input.rank())]);
  return permute(input, axes);
}

Tensor contiguous(const Tensor& input) { return input.contiguous(); }

std::vector<Tensor> split(const Tensor& input, std::int64_t split_size, std::int64_t dim) {
  if (split_size < 1) throw BadAttr("split size must be >= 1, got " + std::to_string(split_size));
  const std::int64_t len = input.dim(dim);
  Dims sections;
  for (std::int64_t start = 0; start < len; start += split_size) sections.push_back(std::min(split_size, len - start));
  return split_sections(input, sections, dim);
}

std::vector<Tensor> split_sections(const Tensor& input, const Dims& sections, std::int64_t dim) {
  const std::size_t axis = normalize_axis(dim, input.rank());
  std::int64_t total = 0;
  for (std::int64_t s : sections) {
    if (s < 1) throw BadAttr("split sections must be >= 1, got " + shape_str(sections));
    total += s;
  }
  if (total != input.dims()[axis]) {
    throw ShapeMismatch("split sections " + shape_str(sections) + " do not sum to dim " +
                        std::to_string(input.dims()[axis]));
  }
  std::vector<Tensor> out;
  std::int64_t start = 0;
  for (std::int64_t s : sections) {
    Dims dims = input.dims();
    dims[axis] = s;
    out.push_back(Tensor::view_of(input, dims, input.strides(), input.offset() + start * input.strides()[axis]));
    start += s;
  }
  return out;
}

Tensor concat(std::span<const Tensor> inputs, std::int64_t dim) {
  if (inputs.empty()) throw ShapeMismatch("concat of zero tensors");
  return Tensor::concat(inputs, normalize_axis(dim, inputs.front().rank()));
}

Tensor expand(const Tensor& input, const Dims& shape) {
  if (shape.size() < input.rank()) {
    throw ShapeMismatch("cannot expand " + shape_str(input.dims()) + " to fewer dims " + shape_str(shape));
  }
  const std::size_t lead = shape.size() - input.rank();
  Dims dims(shape.size()), strides(shape.size(), 0);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i < lead) {
      if (shape[i] < 1) throw BadAttr("expand: -1 not allowed for a new leading dim");
      dims[i] = shape[i];
      continue;
    }
    const std::int64_t have = input.dims()[i - lead];
    const std::int64_t want = shape[i] == -1 ? have : shape[i];
    if (want == have) {
      dims[i] = have;
      strides[i] = input.strides()[i - lead];
    } else if (have == 1 && want >= 1) {
      dims[i] = want;
    } else {
      throw ShapeMismatch("cannot expand " + shape_str(input.dims()) + " to " + shape_str(shape));
    }
  }
  return Tensor::view_of(input, dims, strides, input.offset());
}

// A tensor of all size-1 dims keeps a single [1] dim; rank 0 is not modelled.
Tensor squeeze(const Tensor& input) {
  Dims dims, strides;
  for (std::size_t i = 0; i < input.rank(); ++i) {
    if (input.dims()[i] == 1) continue;
    dims.push_back(input.dims()[i]);
    strides.push_back(input.strides()[i]);
  }
  if (dims.empty()) {
    dims = {1};
    strides = {1};
  }
  return Tensor::view_of(input, dims, strides, input.offset());
}

Tensor squeeze(const Tensor& input, std::int64_t dim) {
  const std::size_t axis = normalize_axis(dim, input.rank());
  if (input.dims()[axis] != 1 || input.rank() == 1) return Tensor::view_of(input, input.dims(), input.strides(), input.offset());
  Dims dims = input.dims(), strides = input.strides();
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(axis));
  strides.erase(strides.begin() + static_cast<std::ptrdiff_t>(axis));
  return Tensor::view_of(input, dims, strides, input.offset());
}

Tensor unsqueeze(const Tensor& input, std::int64_t dim) {
  const std::size_t axis = normalize_axis(dim, input.rank() + 1);
  Dims dims = input.dims(), strides = input.strides();
  const std::int64_t stride = axis < input.rank() ? input.strides()[axis] * input.dims()[axis] : 1;
  dims.insert(dims.begin() + static_cast<std::ptrdiff_t>(axis), 1);
  strides.insert(strides.begin() + static_cast<std::ptrdiff_t>(axis), stride);
  return Tensor::view_of(input, dims, strides, input.offset());
}

}  // namespace opbench::kernels
