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

#include "opbench/report.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "opbench/errors.h"
#include "opbench/json_io.h"

namespace opbench {

using json_io::Json;

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string ratio_text(const Ratio& r) { return r.infinite ? "inf" : num(r.value); }

Json ratio_json(const Ratio& r) {
  return Json{{"value", r.infinite ? Json(nullptr) : Json(r.value)}, {"infinite", r.infinite}};
}

Json breakdown_json(const GroupBreakdown& b) {
  Json groups = Json::array();
  for (OperatorGroup g : kAllGroups) {
    const GroupStats& s = b[g];
    groups.push_back(Json{{"group", std::string(group_name(g))},
                          {"time_us", s.time_us},
                          {"pct", s.pct},
                          {"event_count", s.event_count},
                          {"flops", s.flops}});
  }
  return Json{{"total_time_us", b.total_time_us},
              {"gemm_pct", b.gemm_pct},
              {"nongemm_pct", b.nongemm_pct},
              {"groups", std::move(groups)}};
}

std::string csv(const GroupBreakdown& b) {
  std::string out = "group,time_us,pct,event_count,flops\n";
  for (OperatorGroup g : kAllGroups) {
    const GroupStats& s = b[g];
    out += std::string(group_name(g)) + "," + num(s.time_us) + "," + num(s.pct) + "," +
           std::to_string(s.event_count) + "," + std::to_string(s.flops) + "\n";
  }
  return out;
}

std::string markdown(const GroupBreakdown& b) {
  std::string out = "| group | time_us | pct | event_count | flops |\n|---|---:|---:|---:|---:|\n";
  for (OperatorGroup g : kAllGroups) {
    const GroupStats& s = b[g];
    out += "| " + std::string(group_name(g)) + " | " + num(s.time_us) + " | " + num(s.pct) + " | " +
           std::to_string(s.event_count) + " | " + std::to_string(s.flops) + " |\n";
  }
  return out;
}

Json plot(std::initializer_list<std::pair<std::string_view, const GroupBreakdown*>> bars) {
  Json categories = Json::array();
  for (const auto& [label, b] : bars) categories.push_back(std::string(label));
  Json series = Json::array();
  for (OperatorGroup g : kAllGroups) {
    Json values = Json::array();
    for (const auto& [label, b] : bars) values.push_back((*b)[g].pct);
    series.push_back(Json{{"name", std::string(group_name(g))}, {"gemm", is_gemm(g)}, {"values", std::move(values)}});
  }
  return Json{{"version", std::string(kPlotVersion)},
              {"kind", "stacked_bar"},
              {"unit", "pct"},
              {"categories", std::move(categories)},
              {"series", std::move(series)}};
}

}  // namespace

GroupBreakdown breakdown(const ProfileRun& run) {
  GroupBreakdown b;
  double nongemm_time = 0.0;
  for (const ProfileSample& s : run.samples) {
    GroupStats& g = b.per_group[group_index(s.group)];
    g.time_us += s.wall_time_us;
    g.event_count += 1;
    g.flops += s.flops;
    b.total_time_us += s.wall_time_us;
    if (!is_gemm(s.group)) nongemm_time += s.wall_time_us;
  }
  if (b.total_time_us > 0.0) {
    for (GroupStats& g : b.per_group) g.pct = 100.0 * g.time_us / b.total_time_us;
    b.gemm_pct = b[OperatorGroup::kGemm].pct;
    b.nongemm_pct = 100.0 * nongemm_time / b.total_time_us;
  }
  return b;
}

TopGroup top_nongemm_group(const GroupBreakdown& b) {
  std::optional<OperatorGroup> best;
  for (OperatorGroup g : kAllGroups) {
    if (is_gemm(g) || b[g].event_count == 0) continue;
    if (!best || b[g].time_us > b[*best].time_us) best = g;
  }
  if (!best) throw EmptyError("no non-GEMM events in the breakdown");
  return {*best, b[*best].pct};
}

Ratio pct_ratio(double a, double b) {
  if (a == 0.0) return b == 0.0 ? Ratio{1.0, false} : Ratio{std::numeric_limits<double>::infinity(), true};
  return {b / a, false};
}

Comparison compare(const GroupBreakdown& a, const GroupBreakdown& b) {
  Comparison c{a, b, {}, pct_ratio(a.gemm_pct, b.gemm_pct), pct_ratio(a.nongemm_pct, b.nongemm_pct)};
  for (std::size_t i = 0; i < kNumGroups; ++i) c.per_group[i] = pct_ratio(a.per_group[i].pct, b.per_group[i].pct);
  return c;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "plotdata") return ReportFormat::kPlotdata;
  return std::nullopt;
}

std::string emit(const GroupBreakdown& b, ReportFormat format, std::string_view label) {
  switch (format) {
    case ReportFormat::kJson: {
      Json doc = breakdown_json(b);
      doc["version"] = std::string(kReportVersion);
      return json_io::canonical(doc) + "\n";
    }
    case ReportFormat::kCsv:
      return csv(b);
    case ReportFormat::kMarkdown:
      return markdown(b);
    case ReportFormat::kPlotdata:
      return json_io::canonical(plot({{label, &b}})) + "\n";
  }
  return {};
}

std::string emit(const Comparison& c, ReportFormat format, std::string_view label_a, std::string_view label_b) {
  switch (format) {
    case ReportFormat::kJson: {
      Json groups = Json::array();
      for (OperatorGroup g : kAllGroups) {
        groups.push_back(Json{{"group", std::string(group_name(g))},
                              {"a_pct", c.a[g].pct},
                              {"b_pct", c.b[g].pct},
                              {"ratio", ratio_json(c.per_group[group_index(g)])}});
      }
      Json doc{{"version", std::string(kComparisonVersion)},
               {"labels", {std::string(label_a), std::string(label_b)}},
               {"a", breakdown_json(c.a)},
               {"b", breakdown_json(c.b)},
               {"groups", std::move(groups)},
               {"gemm_ratio", ratio_json(c.gemm)},
               {"nongemm_ratio", ratio_json(c.nongemm)}};
      return json_io::canonical(doc) + "\n";
    }
    case ReportFormat::kCsv: {
      std::string out = "group,a_pct,b_pct,ratio\n";
      for (OperatorGroup g : kAllGroups) {
        out += std::string(group_name(g)) + "," + num(c.a[g].pct) + "," + num(c.b[g].pct) + "," +
               ratio_text(c.per_group[group_index(g)]) + "\n";
      }
      out += "GEMM_total," + num(c.a.gemm_pct) + "," + num(c.b.gemm_pct) + "," + ratio_text(c.gemm) + "\n";
      out += "NonGEMM_total," + num(c.a.nongemm_pct) + "," + num(c.b.nongemm_pct) + "," + ratio_text(c.nongemm) +
             "\n";
      return out;
    }
    case ReportFormat::kMarkdown: {
      std::string out = "| group | " + std::string(label_a) + " pct | " + std::string(label_b) +
                        " pct | ratio |\n|---|---:|---:|---:|\n";
      for (OperatorGroup g : kAllGroups) {
        out += "| " + std::string(group_name(g)) + " | " + num(c.a[g].pct) + " | " + num(c.b[g].pct) + " | " +
               ratio_text(c.per_group[group_index(g)]) + " |\n";
      }
      out += "| NonGEMM total | " + num(c.a.nongemm_pct) + " | " + num(c.b.nongemm_pct) + " | " +
             ratio_text(c.nongemm) + " |\n";
      return out;
    }
    case ReportFormat::kPlotdata:
      return json_io::canonical(plot({{label_a, &c.a}, {label_b, &c.b}})) + "\n";
  }
  return {};
}

GroupBreakdown parse_breakdown_json(std::string_view text) {
  constexpr std::string_view kCtx = "report";
  Json doc = json_io::parse_text(text, kCtx);
  const std::string version = json_io::get_string(doc, "version", kCtx);
  if (version != kReportVersion) throw VersionError("unsupported report version '" + version + "'");
  GroupBreakdown b;
  b.total_time_us = json_io::get_number(doc, "total_time_us", kCtx);
  b.gemm_pct = json_io::get_number(doc, "gemm_pct", kCtx);
  b.nongemm_pct = json_io::get_number(doc, "nongemm_pct", kCtx);
  const Json& groups = json_io::field(doc, "groups", kCtx);
  if (!groups.is_array()) throw SchemaError("report: groups must be a list");
  for (const Json& row : groups) {
    const std::string name = json_io::get_string(row, "group", kCtx);
    auto g = parse_group(name);
    if (!g) throw SchemaError("report: unknown group '" + name + "'");
    GroupStats& s = b.per_group[group_index(*g)];
    s.time_us = json_io::get_number(row, "time_us", kCtx);
    s.pct = json_io::get_number(row, "pct", kCtx);
    s.event_count = json_io::get_int(row, "event_count", kCtx);
    s.flops = json_io::get_int(row, "flops", kCtx);
  }
  return b;
}

}  // namespace opbench
