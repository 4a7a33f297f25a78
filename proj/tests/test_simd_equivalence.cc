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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "opbench/kernels.h"
#include "opbench/simd/dispatch.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace opbench {
namespace {

using simd::Isa;
using simd::KernelTable;
using testing::random_floats;

// Every non-scalar ISA this machine can run.
std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : simd::available_isas()) {
    if (isa != Isa::kScalar) out.push_back(isa);
  }
  return out;
}

// Lengths that exercise empty input, partial vectors and the unrolled body.
const std::size_t kLengths[] = {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 65, 100, 257, 1000};

class IsaGuard {
 public:
  IsaGuard() : saved_(simd::active_isa()) {}
  ~IsaGuard() { simd::set_active_isa(saved_); }

 private:
  Isa saved_;
};

TEST(Dispatch, ScalarAlwaysAvailable) {
  EXPECT_TRUE(simd::isa_available(Isa::kScalar));
  EXPECT_EQ(simd::scalar_table().isa, Isa::kScalar);
  EXPECT_EQ(simd::table_for(simd::active_isa()).isa, simd::active_isa());
  EXPECT_EQ(simd::isa_name(Isa::kAvx2), "avx2");
}

TEST(Dispatch, SetActiveIsaSwitchesTable) {
  IsaGuard guard;
  for (Isa isa : simd::available_isas()) {
    simd::set_active_isa(isa);
    EXPECT_EQ(simd::active().isa, isa);
  }
}

TEST(Dispatch, UnavailableIsaRejected) {
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!simd::isa_available(isa)) {
      EXPECT_THROW(simd::set_active_isa(isa), std::invalid_argument);
    }
  }
}

TEST(SimdEquivalence, ElementwiseAreBitExact) {
  const KernelTable& ref = simd::scalar_table();
  std::mt19937_64 gen(1);
  for (Isa isa : vector_isas()) {
    const KernelTable& t = simd::table_for(isa);
    for (std::size_t n : kLengths) {
      auto a = random_floats(gen, n), b = random_floats(gen, n, 0.5f, 2.0f);
      std::vector<float> want(n), got(n);
      for (auto op : {simd::BinaryOp::kAdd, simd::BinaryOp::kSub, simd::BinaryOp::kMul, simd::BinaryOp::kDiv}) {
        ref.binary(op, a.data(), b.data(), want.data(), n);
        t.binary(op, a.data(), b.data(), got.data(), n);
        EXPECT_EQ(got, want) << simd::isa_name(isa) << " binary n=" << n;
        ref.binary_scalar(op, a.data(), 1.75f, want.data(), n);
        t.binary_scalar(op, a.data(), 1.75f, got.data(), n);
        EXPECT_EQ(got, want) << simd::isa_name(isa) << " binary_scalar n=" << n;
      }
      ref.neg(a.data(), want.data(), n);
      t.neg(a.data(), got.data(), n);
      EXPECT_EQ(got, want);
      ref.relu(a.data(), want.data(), n);
      t.relu(a.data(), got.data(), n);
      EXPECT_EQ(got, want);
      ref.scale_shift(a.data(), want.data(), n, 1.3f, -0.2f);
      t.scale_shift(a.data(), got.data(), n, 1.3f, -0.2f);
      EXPECT_EQ(got, want);
      if (n > 0) {
        EXPECT_EQ(t.max(a.data(), n), ref.max(a.data(), n));
      }
    }
  }
}

TEST(SimdEquivalence, NormalizeIsBitExact) {
  const KernelTable& ref = simd::scalar_table();
  std::mt19937_64 gen(2);
  for (Isa isa : vector_isas()) {
    for (std::size_t n : kLengths) {
      auto x = random_floats(gen, n), g = random_floats(gen, n), b = random_floats(gen, n);
      std::vector<float> want(n), got(n);
      ref.normalize(x.data(), want.data(), n, 0.1f, 2.5f, g.data(), b.data());
      simd::table_for(isa).normalize(x.data(), got.data(), n, 0.1f, 2.5f, g.data(), b.data());
      EXPECT_EQ(got, want) << simd::isa_name(isa) << " n=" << n;
      ref.normalize(x.data(), want.data(), n, -0.3f, 0.5f, nullptr, nullptr);
      simd::table_for(isa).normalize(x.data(), got.data(), n, -0.3f, 0.5f, nullptr, nullptr);
      EXPECT_EQ(got, want) << simd::isa_name(isa) << " n=" << n;
    }
  }
}

TEST(SimdEquivalence, ReductionsWithinTolerance) {
  const KernelTable& ref = simd::scalar_table();
  std::mt19937_64 gen(3);
  for (Isa isa : vector_isas()) {
    const KernelTable& t = simd::table_for(isa);
    for (std::size_t n : kLengths) {
      auto a = random_floats(gen, n), b = random_floats(gen, n);
      double exact = 0, s = 0, sq = 0;
      for (std::size_t i = 0; i < n; ++i) {
        exact += double(a[i]) * double(b[i]);
        s += a[i];
      }
      const double mean = n ? s / n : 0.0;
      for (std::size_t i = 0; i < n; ++i) sq += (a[i] - mean) * (a[i] - mean);
      const double scale = std::max(1.0, std::sqrt(double(n)));
      EXPECT_NEAR(t.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), 1e-5 * scale);
      EXPECT_NEAR(t.dot(a.data(), b.data(), n), exact, 1e-5 * scale);
      EXPECT_NEAR(t.sum(a.data(), n), s, 1e-9 * scale);
      EXPECT_NEAR(t.sum_sq_dev(a.data(), n, mean), sq, 1e-9 * scale);
    }
  }
}

TEST(SimdEquivalence, GemmMatchesScalar) {
  const KernelTable& ref = simd::scalar_table();
  std::mt19937_64 gen(4);
  for (Isa isa : vector_isas()) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t m = testing::rand_int(gen, 1, 13), n = testing::rand_int(gen, 1, 19),
                        k = testing::rand_int(gen, 1, 70);
      const std::size_t lda = k + testing::rand_int(gen, 0, 3), ldb = k + testing::rand_int(gen, 0, 3);
      auto a = random_floats(gen, m * lda), b = random_floats(gen, n * ldb), bias = random_floats(gen, n);
      const std::size_t ldc = n + 2;
      std::vector<float> want(m * ldc, -7.0f), got(m * ldc, -7.0f);
      const float* bp = trial % 2 ? bias.data() : nullptr;
      ref.gemm_nt(a.data(), lda, b.data(), ldb, bp, want.data(), ldc, m, n, k);
      simd::table_for(isa).gemm_nt(a.data(), lda, b.data(), ldb, bp, got.data(), ldc, m, n, k);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < ldc; ++j) {
          if (j >= n) {
            EXPECT_EQ(got[i * ldc + j], -7.0f) << "padding overwritten";
          } else {
            EXPECT_NEAR(got[i * ldc + j], want[i * ldc + j], 1e-5 * std::max(1.0, std::sqrt(double(k))));
          }
        }
      }
    }
  }
}

TEST(SimdEquivalence, IouRowIsBitExact) {
  const KernelTable& ref = simd::scalar_table();
  std::mt19937_64 gen(5);
  for (Isa isa : vector_isas()) {
    for (std::size_t n : kLengths) {
      std::vector<float> x1(n), y1(n), x2(n), y2(n), area(n);
      for (std::size_t i = 0; i < n; ++i) {
        x1[i] = testing::random_floats(gen, 1, 0, 50)[0];
        y1[i] = testing::random_floats(gen, 1, 0, 50)[0];
        // Some zero-area boxes.
        x2[i] = x1[i] + (i % 5 == 0 ? 0.0f : testing::random_floats(gen, 1, 0, 30)[0]);
        y2[i] = y1[i] + testing::random_floats(gen, 1, 0, 30)[0];
        area[i] = (x2[i] - x1[i]) * (y2[i] - y1[i]);
      }
      simd::BoxColumns cols{x1.data(), y1.data(), x2.data(), y2.data(), area.data()};
      std::vector<float> want(n), got(n);
      ref.iou_row(10, 10, 30, 25, 300, cols, want.data(), n);
      simd::table_for(isa).iou_row(10, 10, 30, 25, 300, cols, got.data(), n);
      EXPECT_EQ(got, want) << simd::isa_name(isa) << " n=" << n;
    }
  }
}

// Whole kernels under each ISA against the scalar selection.
TEST(SimdEquivalence, KernelsAgreeAcrossIsas) {
  IsaGuard guard;
  std::mt19937_64 gen(6);
  Tensor x = testing::random_tensor(gen, {2, 3, 17, 19});
  Tensor w = testing::random_tensor(gen, {5, 3, 3, 3});
  Tensor fc = testing::random_tensor(gen, {11, 19});
  kernels::BatchNormParams bn{{0.1f, -0.2f, 0.3f}, {1.0f, 0.5f, 2.0f}, {1.0f, 1.5f, 0.5f}, {0.0f, 0.1f, -0.1f}};
  simd::set_active_isa(Isa::kScalar);
  const auto conv_ref = kernels::conv2d(x, w, nullptr, {}).to_f32_vector();
  const auto lin_ref = kernels::linear(x, fc).to_f32_vector();
  const auto ln_ref = kernels::layer_norm(x).to_f32_vector();
  const auto sm_ref = kernels::softmax(x).to_f32_vector();
  const auto bn_ref = kernels::batch_norm_inference(x, bn).to_f32_vector();
  const auto relu_ref = kernels::activation(kernels::ActivationKind::kRelu, x).to_f32_vector();
  for (Isa isa : vector_isas()) {
    simd::set_active_isa(isa);
    EXPECT_LE(oracle::max_rel_err(kernels::conv2d(x, w, nullptr, {}).to_f32_vector(), oracle::to_double(conv_ref)),
              1e-5);
    EXPECT_LE(oracle::max_rel_err(kernels::linear(x, fc).to_f32_vector(), oracle::to_double(lin_ref)), 1e-5);
    EXPECT_LE(oracle::max_rel_err(kernels::layer_norm(x).to_f32_vector(), oracle::to_double(ln_ref)), 1e-5);
    EXPECT_LE(oracle::max_abs_err(kernels::softmax(x).to_f32_vector(), oracle::to_double(sm_ref)), 1e-6);
    EXPECT_EQ(kernels::batch_norm_inference(x, bn).to_f32_vector(), bn_ref);
    EXPECT_EQ(kernels::activation(kernels::ActivationKind::kRelu, x).to_f32_vector(), relu_ref);
  }
}

TEST(SimdEquivalence, NmsIdenticalAcrossIsas) {
  IsaGuard guard;
  std::mt19937_64 gen(7);
  std::vector<kernels::Box> boxes;
  std::vector<float> scores;
  for (int i = 0; i < 300; ++i) {
    auto c = random_floats(gen, 4, 0, 100);
    boxes.push_back({c[0], c[1], c[0] + c[2] * 0.3f, c[1] + c[3] * 0.3f});
    scores.push_back(random_floats(gen, 1, 0, 1)[0]);
  }
  simd::set_active_isa(Isa::kScalar);
  const auto want = kernels::nms(boxes, scores, {0.1f, 0.4f});
  for (Isa isa : vector_isas()) {
    simd::set_active_isa(isa);
    EXPECT_EQ(kernels::nms(boxes, scores, {0.1f, 0.4f}), want);
  }
}

}  // namespace
}  // namespace opbench
