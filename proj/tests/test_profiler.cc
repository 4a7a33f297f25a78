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

#include <algorithm>
#include <random>
#include <set>

#include "opbench/errors.h"
#include "opbench/graph.h"
#include "opbench/kernels.h"
#include "opbench/profiler.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace opbench {
namespace {

TensorSpec f32(Dims d) { return TensorSpec{std::move(d), std::nullopt, DType::kF32}; }

ProfileConfig quick(std::uint64_t seed = 0) {
  ProfileConfig c;
  c.warmup = 2;
  c.repeats = 5;
  c.seed = seed;
  return c;
}

OperatorGraph two_gelus() {
  OperatorGraph g;
  g.metadata.model_name = "two_gelus";
  g.graph_inputs = {{"x", f32({2, 8})}};
  for (const char* id : {"g1", "g2"}) {
    GraphNode n;
    n.id = id;
    n.op_name = "GELU";
    n.inputs = {std::string(id) == "g1" ? "x" : "g1"};
    n.input_specs = {f32({2, 8})};
    n.output_specs = {f32({2, 8})};
    g.nodes.push_back(n);
  }
  GraphNode fc;
  fc.id = "fc";
  fc.op_name = "linear";
  fc.attrs = {{"out_features", std::int64_t{4}}, {"bias", false}};
  fc.inputs = {"g2"};
  fc.input_specs = {f32({2, 8})};
  fc.output_specs = {f32({2, 4})};
  g.nodes.push_back(fc);
  g.graph_outputs = {"fc"};
  return g;
}

TEST(Profiler, ToyVitSamplesAndOutputs) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  TensorMap profiled;
  const ProfileRun run = profile_graph(g, {}, quick(7), &profiled);
  ASSERT_EQ(run.samples.size(), g.nodes.size());
  EXPECT_EQ(run.samples.size(), 24u);
  EXPECT_EQ(run.repeats, 5);
  EXPECT_GE(run.clock_resolution_ns, 1);
  for (const ProfileSample& s : run.samples) {
    EXPECT_GE(s.wall_time_us, 0.0) << s.node_id;
    EXPECT_EQ(s.group, classify(s.op_name, default_rules())) << s.node_id;
  }
  const TensorMap direct = execute_graph(g, {}, 7);
  ASSERT_EQ(profiled.size(), 1u);
  ASSERT_EQ(direct.size(), 1u);
  EXPECT_TRUE(profiled.at("head").bitwise_equal(direct.at("head")));
  EXPECT_EQ(direct.at("head").dims(), (Dims{1, 10}));
}

TEST(Profiler, NodeTimesFitInsideTotal) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  ProfileConfig c = quick();
  c.repeats = 15;
  const ProfileRun run = profile_graph(g, {}, c);
  double sum = 0;
  for (const ProfileSample& s : run.samples) sum += s.wall_time_us;
  EXPECT_GT(run.total_wall_time_us, 0.0);
  EXPECT_LE(sum, 1.05 * run.total_wall_time_us);
}

TEST(Profiler, EmptyGraph) {
  OperatorGraph g;
  g.metadata.model_name = "empty";
  const ProfileRun run = profile_graph(g, {}, quick());
  EXPECT_TRUE(run.samples.empty());
  EXPECT_GE(run.total_wall_time_us, 0.0);
  EXPECT_TRUE(execute_graph(g, {}, 0).empty());
}

TEST(Profiler, SuppliedIdentityWeight) {
  OperatorGraph g;
  g.graph_inputs = {{"x", f32({3, 4})}, {"w", f32({4, 4})}};
  GraphNode n;
  n.id = "fc";
  n.op_name = "linear";
  n.attrs = {{"out_features", std::int64_t{4}}, {"bias", false}};
  n.inputs = {"x", "w"};
  n.input_specs = {f32({3, 4}), f32({4, 4})};
  n.output_specs = {f32({3, 4})};
  g.nodes = {n};
  g.graph_outputs = {"fc"};
  std::vector<float> eye(16, 0.0f);
  for (int i = 0; i < 4; ++i) eye[i * 5] = 1.0f;
  std::mt19937_64 gen(1);
  const Tensor x = testing::random_tensor(gen, {3, 4});
  const TensorMap out = execute_graph(g, {{"x", x}, {"w", Tensor::from_vector({4, 4}, eye)}}, 0);
  EXPECT_EQ(out.at("fc").to_f32_vector(), x.to_f32_vector());
}

TEST(Profiler, MedianMatchesSortedOracle) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + gen() % 40);
    for (double& d : v) d = static_cast<double>(gen() % 1000) / 7.0;
    const double want = oracle::stats(v).median;
    EXPECT_DOUBLE_EQ(median(v), want);
    std::shuffle(v.begin(), v.end(), gen);
    EXPECT_DOUBLE_EQ(median(v), want);
  }
  EXPECT_EQ(median({}), 0.0);
}

TEST(Profiler, ShapeRecordsDeduplicate) {
  const ProfileRun run = profile_graph(two_gelus(), {}, quick());
  const auto records = capture_shape_records(run);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].op_name, "GELU");
  EXPECT_EQ(records[0].group, OperatorGroup::kActivation);
  EXPECT_EQ(records[0].count, 2);
  EXPECT_EQ(records[0].input_shapes, (std::vector<Dims>{{2, 8}}));
  EXPECT_EQ(records[0].source_model, "two_gelus");
  const auto with_gemm = capture_shape_records(run, true);
  ASSERT_EQ(with_gemm.size(), 2u);
  EXPECT_EQ(with_gemm[1].op_name, "linear");
}

TEST(Profiler, GemmOnlyGraphGivesNoRecords) {
  OperatorGraph g = two_gelus();
  g.nodes.erase(g.nodes.begin(), g.nodes.begin() + 2);
  g.nodes[0].inputs = {"x"};
  const ProfileRun run = profile_graph(g, {}, quick());
  EXPECT_TRUE(capture_shape_records(run).empty());
}

// Records are the distinct (op, shapes, attrs) among non-GEMM samples.
TEST(Profiler, ToyVitRecordsMatchSetOracle) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  const ProfileRun run = profile_graph(g, {}, quick());
  const auto records = capture_shape_records(run);
  std::map<std::string, std::int64_t> want;
  for (const ProfileSample& s : run.samples) {
    if (is_gemm(s.group)) continue;
    ShapeRecord key;
    key.op_name = s.op_name;
    key.input_shapes = s.input_shapes;
    key.attrs = s.attrs;
    ++want[serialize_records({key})];
  }
  std::map<std::string, std::int64_t> got;
  for (const ShapeRecord& r : records) {
    ShapeRecord key;
    key.op_name = r.op_name;
    key.input_shapes = r.input_shapes;
    key.attrs = r.attrs;
    EXPECT_FALSE(is_gemm(r.group));
    EXPECT_TRUE(got.emplace(serialize_records({key}), r.count).second) << "duplicate record " << r.op_name;
  }
  EXPECT_EQ(got, want);
}

TEST(Profiler, SeedDeterminism) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  const auto a = execute_graph(g, {}, 11).at("head");
  const auto b = execute_graph(g, {}, 11).at("head");
  const auto c = execute_graph(g, {}, 12).at("head");
  EXPECT_TRUE(a.bitwise_equal(b));
  EXPECT_FALSE(a.bitwise_equal(c));
}

TEST(Profiler, InputMismatch) {
  const OperatorGraph g = two_gelus();
  EXPECT_THROW(execute_graph(g, {{"x", Tensor::zeros({2, 9}, DType::kF32)}}, 0), InputMismatch);
  EXPECT_THROW(execute_graph(g, {{"x", Tensor::zeros({2, 8}, DType::kI64)}}, 0), InputMismatch);
  EXPECT_THROW(execute_graph(g, {{"y", Tensor::zeros({2, 8}, DType::kF32)}}, 0), InputMismatch);
}

TEST(Profiler, BadConfig) {
  ProfileConfig c = quick();
  c.repeats = 0;
  EXPECT_THROW(profile_graph(two_gelus(), {}, c), BadAttr);
  c = quick();
  c.warmup = -1;
  EXPECT_THROW(profile_graph(two_gelus(), {}, c), BadAttr);
}

TEST(Profiler, KernelFailureNamesNode) {
  OperatorGraph g = two_gelus();
  // Declared output shape disagrees with what the kernel produces.
  g.nodes[2].output_specs = {f32({2, 5})};
  g.nodes[2].attrs["out_features"] = std::int64_t{4};
  try {
    execute_graph(g, {}, 0);
    FAIL() << "expected ExecError";
  } catch (const ExecError& e) {
    EXPECT_EQ(e.node_id(), "fc");
  }
}

TEST(Profiler, UnknownOpIsExecError) {
  OperatorGraph g = two_gelus();
  g.nodes[1].op_name = "frobnicate";
  try {
    execute_graph(g, {}, 0);
    FAIL() << "expected ExecError";
  } catch (const ExecError& e) {
    EXPECT_EQ(e.node_id(), "g2");
  }
}

TEST(Profiler, DetectionGraphRuns) {
  const OperatorGraph g = load_graph(testing::fixture("toy_detection.graph.json"));
  TensorMap out;
  const ProfileRun run = profile_graph(g, {}, quick(3), &out);
  EXPECT_EQ(run.samples.size(), g.nodes.size());
  for (const auto& id : g.graph_outputs) EXPECT_TRUE(out.count(id)) << id;
  std::set<OperatorGroup> groups;
  for (const ProfileSample& s : run.samples) groups.insert(s.group);
  EXPECT_TRUE(groups.count(OperatorGroup::kRoiSelection));
  EXPECT_TRUE(groups.count(OperatorGroup::kInterpolation));
  EXPECT_TRUE(groups.count(OperatorGroup::kNormalization));
}

}  // namespace
}  // namespace opbench
