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

#ifndef OPBENCH_MICROBENCH_H_
#define OPBENCH_MICROBENCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opbench/graph.h"
#include "opbench/taxonomy.h"
#include "opbench/tensor.h"

namespace opbench {

inline constexpr std::string_view kSuiteVersion = "opbench-ubench/1";
inline constexpr std::string_view kResultsVersion = "opbench-ubench-results/1";

struct MicrobenchSpec {
  std::string op_name;
  OperatorGroup group = OperatorGroup::kUncategorized;
  std::vector<Dims> input_shapes;
  AttrMap attrs;
  std::string source_model;
  std::uint64_t seed = 0;

  bool operator==(const MicrobenchSpec&) const = default;
};

struct MicrobenchStats {
  double min = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population

  bool operator==(const MicrobenchStats&) const = default;
};

struct MicrobenchConfig {
  int warmup = 10;
  int iterations = 100;
};

struct MicrobenchResult {
  MicrobenchSpec spec;
  bool runnable = true;
  std::string error;  // set when the spec could not run
  int iterations = 0;
  int warmup = 0;
  std::vector<double> times_us;
  MicrobenchStats stats;
  std::int64_t flops = 0;
  double throughput_gflops = 0.0;  // flops / median, 0 when flops == 0

  bool ok() const { return runnable && error.empty(); }
};

using RecordFilter = std::function<bool(const ShapeRecord&)>;

// One spec per accepted record, ordered by descending count then op_name.
// Seeds hash the record's canonical content.
std::vector<MicrobenchSpec> generate_specs(const std::vector<ShapeRecord>& records,
                                           const RecordFilter& filter = nullptr);

// The node the kernel registry binds for `spec`; inputs are "in0", "in1", ...
GraphNode spec_node(const MicrobenchSpec& spec);

bool spec_runnable(const MicrobenchSpec& spec);

// Valid-by-construction inputs: uniform [-1, 1) f32, except nms boxes
// (x2 = x1 + |w|, y2 = y1 + |h|) and divisors in [1, 2).
std::vector<Tensor> synthesize_inputs(const MicrobenchSpec& spec);

// Throws UnrunnableSpec, ExecError, or BadAttr for iterations < 1.
MicrobenchResult run_spec(const MicrobenchSpec& spec, const MicrobenchConfig& config);

// Serial; failures are recorded in the result rather than thrown.
std::vector<MicrobenchResult> run_suite(const std::vector<MicrobenchSpec>& specs, const MicrobenchConfig& config);

MicrobenchStats compute_stats(const std::vector<double>& times_us);

// One functional output of the spec's kernel on its synthesized inputs.
std::vector<Tensor> run_once(const MicrobenchSpec& spec);

std::string serialize_suite(const std::vector<MicrobenchSpec>& specs);
std::vector<MicrobenchSpec> parse_suite(std::string_view text);
std::vector<MicrobenchSpec> load_suite(const std::string& path);
void save_suite(const std::vector<MicrobenchSpec>& specs, const std::string& path);

std::string serialize_results(const std::vector<MicrobenchResult>& results);
std::vector<MicrobenchResult> parse_results(std::string_view text);

// Plain-text table: op, group, shapes, median, status.
std::string summary_table(const std::vector<MicrobenchResult>& results);

}  // namespace opbench

#endif  // OPBENCH_MICROBENCH_H_
