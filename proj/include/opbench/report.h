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

#ifndef OPBENCH_REPORT_H_
#define OPBENCH_REPORT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "opbench/taxonomy.h"
#include "opbench/trace.h"

namespace opbench {

struct GroupStats {
  double time_us = 0.0;
  double pct = 0.0;  // of total_time_us
  std::int64_t event_count = 0;
  std::int64_t flops = 0;

  bool operator==(const GroupStats&) const = default;
};

// Indexed by group_index(); every group is present, zeros included.
struct GroupBreakdown {
  std::array<GroupStats, kNumGroups> per_group{};
  double total_time_us = 0.0;
  double gemm_pct = 0.0;
  double nongemm_pct = 0.0;

  const GroupStats& operator[](OperatorGroup g) const { return per_group[group_index(g)]; }
  bool operator==(const GroupBreakdown&) const = default;
};

// Aggregates graph-level sample times; child kernels are not counted again.
// An empty (or zero-time) trace gives an all-zero breakdown.
GroupBreakdown breakdown(const ProfileRun& run);

struct TopGroup {
  OperatorGroup group;
  double pct;
};

// Most expensive non-GEMM group by time, ties to the earlier group.
// Throws EmptyError when no non-GEMM event exists.
TopGroup top_nongemm_group(const GroupBreakdown& b);

// b/a; 0/0 is 1 and x/0 is flagged infinite.
struct Ratio {
  double value = 1.0;
  bool infinite = false;

  bool operator==(const Ratio&) const = default;
};

Ratio pct_ratio(double a, double b);

struct Comparison {
  GroupBreakdown a;
  GroupBreakdown b;
  std::array<Ratio, kNumGroups> per_group{};
  Ratio gemm;
  Ratio nongemm;
};

Comparison compare(const GroupBreakdown& a, const GroupBreakdown& b);

enum class ReportFormat { kJson, kCsv, kMarkdown, kPlotdata };

std::optional<ReportFormat> parse_report_format(std::string_view name);

inline constexpr std::string_view kReportVersion = "opbench-report/1";
inline constexpr std::string_view kComparisonVersion = "opbench-compare/1";
inline constexpr std::string_view kPlotVersion = "opbench-plot/1";

// Rows always follow enumeration order. `label` names the bar in plotdata.
std::string emit(const GroupBreakdown& b, ReportFormat format, std::string_view label = "trace");
std::string emit(const Comparison& c, ReportFormat format, std::string_view label_a = "a",
                 std::string_view label_b = "b");

// Inverse of emit(b, kJson). Throws SchemaError / VersionError.
GroupBreakdown parse_breakdown_json(std::string_view text);

}  // namespace opbench

#endif  // OPBENCH_REPORT_H_
