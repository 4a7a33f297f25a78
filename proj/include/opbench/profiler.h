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

#ifndef OPBENCH_PROFILER_H_
#define OPBENCH_PROFILER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opbench/graph.h"
#include "opbench/taxonomy.h"
#include "opbench/tensor.h"
#include "opbench/trace.h"

namespace opbench {

using TensorMap = std::map<std::string, Tensor>;

struct ProfileConfig {
  int warmup = 5;
  int repeats = 30;
  std::uint64_t seed = 0;
  // Builtin rules when unset.
  std::optional<RuleSet> rules;
};

// Graph inputs not present in `inputs` are drawn uniform [-1, 1) from `seed`
// (f32; i64/bool inputs are zero-filled). Supplied inputs must match their
// declared dims and dtype, else InputMismatch.
TensorMap prepare_inputs(const OperatorGraph& graph, const TensorMap& inputs, std::uint64_t seed);

// One untimed pass. Returns graph_outputs by value id. Kernel failures are
// rethrown as ExecError naming the node.
TensorMap execute_graph(const OperatorGraph& graph, const TensorMap& inputs, std::uint64_t seed);

// `warmup` untimed passes, then `repeats` timed ones. Each sample holds the
// median of its node's timings; total_wall_time_us is the median pass time.
// When `outputs` is non-null it receives the graph outputs of the last pass.
ProfileRun profile_graph(const OperatorGraph& graph, const TensorMap& inputs, const ProfileConfig& config,
                         TensorMap* outputs = nullptr);

// One record per distinct (op_name, input_shapes, attrs) among the run's
// samples, in first-seen order, with occurrence counts. GEMM samples are
// skipped unless `include_gemm`.
std::vector<ShapeRecord> capture_shape_records(const ProfileRun& run, bool include_gemm = false);

// Smallest observable step of the timing clock, in nanoseconds.
std::int64_t measure_clock_resolution_ns();

// Median of `values` (mean of the middle pair for even sizes); 0 when empty.
double median(std::vector<double> values);

}  // namespace opbench

#endif  // OPBENCH_PROFILER_H_
