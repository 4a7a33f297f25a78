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

#ifndef OPBENCH_INGEST_H_
#define OPBENCH_INGEST_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opbench/taxonomy.h"
#include "opbench/trace.h"

namespace opbench {

// A complete ("ph": "X") Chrome trace event.
struct ChromeEvent {
  std::string name;
  std::string category;
  std::string thread;  // "pid/tid"
  double ts = 0.0;     // microseconds
  double dur = 0.0;
  std::vector<Dims> input_dims;
  std::string node_id;  // args.node_id when present
};

// Reads the X events of a Chrome trace (bare array or {"traceEvents": [...]}),
// in file order. Other phases are skipped. Throws SchemaError.
std::vector<ChromeEvent> parse_chrome_events(std::string_view text);

// parent[i] is the index of the innermost event on the same thread whose
// interval contains event i, or -1 for roots. Identical intervals nest in
// file order. Throws AttributionError listing every pair of events on one
// thread that overlap without nesting.
std::vector<int> containment_forest(const std::vector<ChromeEvent>& events);

// Root events become samples (ordered by ts, then file order) and their
// direct children become child kernels. Events whose category mentions
// "kernel" or starts with "gpu" are device_external. flops are 0 and
// total_wall_time_us is the sum of root durations.
NormalizedTrace convert_chrome_trace(const std::string& path, const RuleSet& rules);
NormalizedTrace convert_chrome_trace_text(std::string_view text, const RuleSet& rules,
                                          std::string model_name = "");

}  // namespace opbench

#endif  // OPBENCH_INGEST_H_
