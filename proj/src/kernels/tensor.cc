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

#include "opbench/tensor.h"

#include <algorithm>
#include <atomic>
#include <cstring>

#include "opbench/errors.h"

namespace opbench {

namespace {

std::atomic<std::uint64_t> g_allocations{0};

std::string dims_str(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

std::int64_t product(const Dims& dims) {
  std::int64_t n = 1;
  for (std::int64_t d : dims) n *= d;
  return n;
}

// Calls fn(storage_offset) for every element in row-major logical order.
template <typename Fn>
void for_each_offset(const Dims& dims, const Dims& strides, std::int64_t base, Fn&& fn) {
  const std::size_t rank = dims.size();
  const std::int64_t total = product(dims);
  std::vector<std::int64_t> idx(rank, 0);
  std::int64_t off = base;
  for (std::int64_t n = 0; n < total; ++n) {
    fn(off);
    for (std::size_t ax = rank; ax-- > 0;) {
      if (++idx[ax] < dims[ax]) {
        off += strides[ax];
        break;
      }
      off -= strides[ax] * (dims[ax] - 1);
      idx[ax] = 0;
    }
  }
}

template <typename T>
std::vector<T> gather(const std::vector<T>& src, const Dims& dims, const Dims& strides,
                      std::int64_t offset) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(product(dims)));
  for_each_offset(dims, strides, offset, [&](std::int64_t o) { out.push_back(src[static_cast<std::size_t>(o)]); });
  return out;
}

}  // namespace

Storage::Storage(Buffer buffer) : buffer_(std::move(buffer)) {
  g_allocations.fetch_add(1, std::memory_order_relaxed);
}

DType Storage::dtype() const {
  switch (buffer_.index()) {
    case 0: return DType::kF32;
    case 1: return DType::kI64;
    default: return DType::kBool;
  }
}

std::int64_t Storage::size() const {
  return std::visit([](const auto& v) { return static_cast<std::int64_t>(v.size()); }, buffer_);
}

std::uint64_t Storage::allocation_count() { return g_allocations.load(std::memory_order_relaxed); }

std::size_t normalize_axis(std::int64_t axis, std::size_t rank) {
  const auto r = static_cast<std::int64_t>(rank);
  std::int64_t a = axis < 0 ? axis + r : axis;
  if (a < 0 || a >= r) {
    throw BadAttr("axis " + std::to_string(axis) + " out of range for rank " + std::to_string(rank));
  }
  return static_cast<std::size_t>(a);
}

Tensor::Tensor(std::shared_ptr<Storage> storage, Dims dims, Dims strides, std::int64_t offset, bool alias)
    : storage_(std::move(storage)),
      dims_(std::move(dims)),
      strides_(std::move(strides)),
      offset_(offset),
      alias_(alias) {}

namespace {

template <typename T>
std::shared_ptr<Storage> make_storage(const Dims& dims, std::vector<T> data) {
  if (auto err = check_dims(dims); !err.empty()) throw ShapeMismatch(err + " " + dims_str(dims));
  if (static_cast<std::int64_t>(data.size()) != product(dims)) {
    throw ShapeMismatch("buffer of " + std::to_string(data.size()) + " elements for dims " + dims_str(dims));
  }
  return std::make_shared<Storage>(Storage::Buffer(std::move(data)));
}

}  // namespace

Tensor Tensor::from_vector(const Dims& dims, std::vector<float> data) {
  return Tensor(make_storage(dims, std::move(data)), dims, contiguous_strides(dims), 0, false);
}

Tensor Tensor::from_vector(const Dims& dims, std::vector<std::int64_t> data) {
  return Tensor(make_storage(dims, std::move(data)), dims, contiguous_strides(dims), 0, false);
}

Tensor Tensor::from_bools(const Dims& dims, std::vector<std::uint8_t> data) {
  return Tensor(make_storage(dims, std::move(data)), dims, contiguous_strides(dims), 0, false);
}

Tensor Tensor::zeros(const Dims& dims, DType dtype) {
  if (auto err = check_dims(dims); !err.empty()) throw ShapeMismatch(err + " " + dims_str(dims));
  const auto count = static_cast<std::size_t>(product(dims));
  switch (dtype) {
    case DType::kF32: return from_vector(dims, std::vector<float>(count, 0.0f));
    case DType::kI64: return from_vector(dims, std::vector<std::int64_t>(count, 0));
    case DType::kBool: return from_bools(dims, std::vector<std::uint8_t>(count, 0));
  }
  return {};
}

Tensor Tensor::view_of(const Tensor& base, Dims dims, Dims strides, std::int64_t offset, bool alias) {
  if (!base.defined()) throw ShapeMismatch("view of an undefined tensor");
  if (auto err = check_dims(dims); !err.empty()) throw ShapeMismatch(err + " " + dims_str(dims));
  if (strides.size() != dims.size()) throw ShapeMismatch("strides/dims rank mismatch");
  std::int64_t max_off = offset;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (strides[i] < 0) throw ShapeMismatch("negative stride");
    max_off += strides[i] * (dims[i] - 1);
  }
  if (offset < 0 || max_off >= base.storage_->size()) {
    throw ShapeMismatch("view " + dims_str(dims) + " reads outside its source buffer");
  }
  return Tensor(base.storage_, std::move(dims), std::move(strides), offset, alias);
}

Tensor Tensor::concat(std::span<const Tensor> parts, std::size_t axis) {
  if (parts.empty()) throw ShapeMismatch("concat of zero tensors");
  const Tensor& first = parts.front();
  if (axis >= first.rank()) throw BadAttr("concat axis out of range");
  Dims out_dims = first.dims_;
  out_dims[axis] = 0;
  for (const Tensor& p : parts) {
    if (p.rank() != first.rank() || p.dtype() != first.dtype()) {
      throw ShapeMismatch("concat inputs disagree in rank or dtype");
    }
    for (std::size_t ax = 0; ax < p.rank(); ++ax) {
      if (ax != axis && p.dims_[ax] != first.dims_[ax]) {
        throw ShapeMismatch("concat inputs disagree on non-concat dim " + std::to_string(ax) + ": " +
                            dims_str(p.dims_) + " vs " + dims_str(first.dims_));
      }
    }
    out_dims[axis] += p.dims_[axis];
  }
  std::int64_t outer = 1;
  for (std::size_t ax = 0; ax < axis; ++ax) outer *= out_dims[ax];
  std::int64_t inner = 1;
  for (std::size_t ax = axis + 1; ax < out_dims.size(); ++ax) inner *= out_dims[ax];

  auto buffer = std::visit(
      [&](const auto& proto) {
        using V = std::decay_t<decltype(proto)>;
        V out(static_cast<std::size_t>(product(out_dims)));
        std::int64_t axis_offset = 0;
        for (const Tensor& p : parts) {
          V packed = gather(std::get<V>(p.storage_->buffer()), p.dims_, p.strides_, p.offset_);
          const std::int64_t chunk = p.dims_[axis] * inner;
          for (std::int64_t o = 0; o < outer; ++o) {
            std::copy_n(packed.begin() + o * chunk, chunk,
                        out.begin() + o * out_dims[axis] * inner + axis_offset * inner);
          }
          axis_offset += p.dims_[axis];
        }
        return Storage::Buffer(std::move(out));
      },
      first.storage_->buffer());
  return Tensor(std::make_shared<Storage>(std::move(buffer)), out_dims, contiguous_strides(out_dims), 0,
                false);
}

std::int64_t Tensor::dim(std::int64_t axis) const { return dims_[normalize_axis(axis, rank())]; }

std::int64_t Tensor::numel() const { return product(dims_); }

DType Tensor::dtype() const { return storage_ ? storage_->dtype() : DType::kF32; }

// Size-1 axes never advance, so their strides are irrelevant.
bool Tensor::is_contiguous() const {
  std::int64_t expected = 1;
  for (std::size_t ax = dims_.size(); ax-- > 0;) {
    if (dims_[ax] == 1) continue;
    if (strides_[ax] != expected) return false;
    expected *= dims_[ax];
  }
  return true;
}

TensorSpec Tensor::spec() const {
  TensorSpec s{dims_, std::nullopt, dtype()};
  if (!is_contiguous()) s.strides = strides_;
  return s;
}

namespace {

template <typename T>
const std::vector<T>& buffer_as(const Storage& s, const char* what) {
  if (const auto* v = std::get_if<std::vector<T>>(&s.buffer())) return *v;
  throw ShapeMismatch(std::string("tensor is not ") + what);
}

}  // namespace

std::span<const float> Tensor::f32() const {
  const auto& buf = buffer_as<float>(*storage_, "f32");
  if (!is_contiguous()) throw ShapeMismatch("contiguous access to a strided tensor");
  return {buf.data() + offset_, static_cast<std::size_t>(numel())};
}

std::span<float> Tensor::f32_mut() {
  auto& buf = std::get<std::vector<float>>(storage_->buffer());
  if (!is_contiguous()) throw ShapeMismatch("contiguous access to a strided tensor");
  return {buf.data() + offset_, static_cast<std::size_t>(numel())};
}

std::span<const std::int64_t> Tensor::i64() const {
  const auto& buf = buffer_as<std::int64_t>(*storage_, "i64");
  if (!is_contiguous()) throw ShapeMismatch("contiguous access to a strided tensor");
  return {buf.data() + offset_, static_cast<std::size_t>(numel())};
}

double Tensor::read(std::int64_t flat_index) const {
  std::int64_t off = offset_;
  std::int64_t rem = flat_index;
  for (std::size_t ax = rank(); ax-- > 0;) {
    off += (rem % dims_[ax]) * strides_[ax];
    rem /= dims_[ax];
  }
  return std::visit([off](const auto& v) { return static_cast<double>(v[static_cast<std::size_t>(off)]); },
                    storage_->buffer());
}

Tensor Tensor::clone() const {
  auto buffer = std::visit(
      [this](const auto& v) { return Storage::Buffer(gather(v, dims_, strides_, offset_)); },
      storage_->buffer());
  return Tensor(std::make_shared<Storage>(std::move(buffer)), dims_, contiguous_strides(dims_), 0, false);
}

Tensor Tensor::contiguous() const { return is_contiguous() ? *this : clone(); }

std::vector<float> Tensor::to_f32_vector() const {
  return std::visit(
      [this](const auto& v) {
        auto g = gather(v, dims_, strides_, offset_);
        return std::vector<float>(g.begin(), g.end());
      },
      storage_->buffer());
}

bool Tensor::bitwise_equal(const Tensor& other) const {
  if (dims_ != other.dims_ || dtype() != other.dtype()) return false;
  return std::visit(
      [&](const auto& mine) {
        using V = std::decay_t<decltype(mine)>;
        const auto& theirs = std::get<V>(other.storage_->buffer());
        auto a = gather(mine, dims_, strides_, offset_);
        auto b = gather(theirs, other.dims_, other.strides_, other.offset_);
        return a.size() == b.size() &&
               (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(a[0])) == 0);
      },
      storage_->buffer());
}

}  // namespace opbench
