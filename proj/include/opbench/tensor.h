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

#ifndef OPBENCH_TENSOR_H_
#define OPBENCH_TENSOR_H_

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "opbench/graph.h"

namespace opbench {

// Reference-counted flat buffer. Every construction bumps a process-wide
// counter so tests can assert that aliasing ops copy nothing.
class Storage {
 public:
  using Buffer = std::variant<std::vector<float>, std::vector<std::int64_t>, std::vector<std::uint8_t>>;

  explicit Storage(Buffer buffer);

  DType dtype() const;
  std::int64_t size() const;
  const Buffer& buffer() const { return buffer_; }
  Buffer& buffer() { return buffer_; }

  static std::uint64_t allocation_count();

 private:
  Buffer buffer_;
};

// Strided view over a Storage. Copies share storage; use clone() for a deep
// copy. `is_alias()` is true when the tensor was produced as a view of
// another tensor's storage.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(const Dims& dims, DType dtype = DType::kF32);
  static Tensor from_vector(const Dims& dims, std::vector<float> data);
  static Tensor from_vector(const Dims& dims, std::vector<std::int64_t> data);
  static Tensor from_bools(const Dims& dims, std::vector<std::uint8_t> data);
  static Tensor scalar(float value) { return from_vector({1}, std::vector<float>{value}); }

  // Throws ShapeMismatch when the view would read outside the storage.
  // `alias` = false marks a view over freshly materialized storage.
  static Tensor view_of(const Tensor& base, Dims dims, Dims strides, std::int64_t offset,
                        bool alias = true);

  // Packs `parts` along `axis`. Non-concat dims and dtypes must agree.
  static Tensor concat(std::span<const Tensor> parts, std::size_t axis);

  const Dims& dims() const { return dims_; }
  const Dims& strides() const { return strides_; }
  std::int64_t offset() const { return offset_; }
  std::size_t rank() const { return dims_.size(); }
  std::int64_t dim(std::int64_t axis) const;
  std::int64_t numel() const;
  DType dtype() const;
  bool is_contiguous() const;
  bool is_alias() const { return alias_; }
  bool defined() const { return storage_ != nullptr; }
  bool shares_storage_with(const Tensor& other) const { return storage_ == other.storage_; }

  TensorSpec spec() const;

  // Contiguous element access. Throws ShapeMismatch on dtype mismatch or a
  // non-contiguous tensor.
  std::span<const float> f32() const;
  std::span<float> f32_mut();
  std::span<const std::int64_t> i64() const;

  // Strided element read by flat row-major logical index, converted to f64.
  double read(std::int64_t flat_index) const;

  // Packed copy (always allocates).
  Tensor clone() const;
  // Self when already contiguous, otherwise a packed copy.
  Tensor contiguous() const;

  // Logical values in row-major order, whatever the layout.
  std::vector<float> to_f32_vector() const;

  // Same dims/dtype and bitwise-identical logical values.
  bool bitwise_equal(const Tensor& other) const;

 private:
  Tensor(std::shared_ptr<Storage> storage, Dims dims, Dims strides, std::int64_t offset, bool alias);

  std::shared_ptr<Storage> storage_;
  Dims dims_;
  Dims strides_;
  std::int64_t offset_ = 0;
  bool alias_ = false;
};

// Positive axis for a possibly negative one; throws BadAttr when out of range.
std::size_t normalize_axis(std::int64_t axis, std::size_t rank);

}  // namespace opbench

#endif  // OPBENCH_TENSOR_H_
