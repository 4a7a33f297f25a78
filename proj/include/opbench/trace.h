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

#ifndef OPBENCH_TRACE_H_
#define OPBENCH_TRACE_H_

// Per-operator timing records shared by the profiler (reference execution)
// and ingest (externally recorded traces). On disk: "opbench-trace/1".

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opbench/graph.h"
#include "opbench/taxonomy.h"

namespace opbench {

inline constexpr std::string_view kTraceVersion = "opbench-trace/1";

enum class Device { kHost, kDeviceExternal };

std::string_view device_name(Device device);
std::optional<Device> parse_device(std::string_view name);

struct ChildKernel {
  std::string kernel_name;
  double wall_time_us = 0.0;

  bool operator==(const ChildKernel&) const = default;
};

struct ProfileSample {
  std::string node_id;
  std::string op_name;
  OperatorGroup group = OperatorGroup::kUncategorized;
  double wall_time_us = 0.0;
  std::int64_t flops = 0;
  std::vector<Dims> input_shapes;
  AttrMap attrs;
  Device device = Device::kHost;
  std::vector<ChildKernel> children;

  bool operator==(const ProfileSample&) const = default;
};

struct ProfileRun {
  std::string model_name;
  std::int64_t batch_size = 1;
  std::vector<ProfileSample> samples;
  double total_wall_time_us = 0.0;
  std::int64_t repeats = 1;
  std::int64_t clock_resolution_ns = 0;
  // Authored fixtures carry the figures their durations were built to
  // produce (e.g. "nongemm_pct") and a note saying what they reconstruct.
  AttrMap expected;
  std::string note;

  bool operator==(const ProfileRun&) const = default;
};

// An ingested trace has the same shape; devices may be external and samples
// may carry child kernels.
using NormalizedTrace = ProfileRun;

// Child kernel times may exceed their parent by at most this factor.
inline constexpr double kChildSumTolerance = 1.01;

// Samples without a "group" are classified with `rules`. Throws IoError,
// SchemaError, VersionError, or ValidationError naming the sample whose
// children overrun it.
NormalizedTrace parse_trace(const std::string& path, const RuleSet& rules);
NormalizedTrace parse_trace_text(std::string_view text, const RuleSet& rules);

std::string serialize_trace(const ProfileRun& run);
void save_trace(const ProfileRun& run, const std::string& path);

}  // namespace opbench

#endif  // OPBENCH_TRACE_H_
