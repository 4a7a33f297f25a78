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

#include "opbench/fixtures.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "opbench/errors.h"
#include "opbench/graph.h"
#include "opbench/ingest.h"
#include "opbench/json_io.h"
#include "opbench/microbench.h"
#include "opbench/report.h"
#include "opbench/taxonomy.h"
#include "opbench/trace.h"

namespace opbench {

namespace fs = std::filesystem;

namespace {

constexpr double kPctTolerance = 0.01;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string fmt_pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Returns an empty string when every expected figure is reproduced.
std::string check_expected(const NormalizedTrace& trace) {
  if (trace.expected.empty()) return {};
  const GroupBreakdown b = breakdown(trace);
  std::string problems;
  auto near = [&](const std::string& key, double want, double got) {
    if (std::fabs(want - got) > kPctTolerance) {
      problems += (problems.empty() ? "" : "; ") + key + " expected " + fmt_pct(want) + ", got " + fmt_pct(got);
    }
  };
  for (const auto& [key, value] : trace.expected) {
    if (key == "top_nongemm_group") {
      const auto name = attr_string(trace.expected, key);
      const auto top = top_nongemm_group(b);
      if (!name || parse_group(*name) != top.group) {
        problems += (problems.empty() ? "" : "; ") + key + " expected " + name.value_or("?") + ", got " +
                    std::string(group_name(top.group));
      }
      continue;
    }
    const auto want = attr_double(trace.expected, key);
    if (!want) {
      problems += (problems.empty() ? "" : "; ") + key + " must be a number";
      continue;
    }
    if (key == "gemm_pct") {
      near(key, *want, b.gemm_pct);
    } else if (key == "nongemm_pct") {
      near(key, *want, b.nongemm_pct);
    } else if (key == "top_nongemm_pct") {
      near(key, *want, top_nongemm_group(b).pct);
    } else if (key.rfind("pct_", 0) == 0 && parse_group(key.substr(4))) {
      near(key, *want, b[*parse_group(key.substr(4))].pct);
    } else {
      problems += (problems.empty() ? "" : "; ") + std::string("unknown expected key '") + key + "'";
    }
  }
  return problems;
}

FixtureCheck check_file(const fs::path& path, const RuleSet& rules) {
  const std::string name = path.filename().string();
  const std::string p = path.string();
  FixtureCheck c{p, "", true, ""};
  try {
    if (ends_with(name, ".graph.json")) {
      c.kind = "graph";
      const OperatorGraph g = load_graph(p);
      c.detail = std::to_string(g.nodes.size()) + " nodes";
    } else if (ends_with(name, ".trace.json")) {
      c.kind = "trace";
      const NormalizedTrace t = parse_trace(p, rules);
      const std::string problems = check_expected(t);
      if (!problems.empty()) {
        c.ok = false;
        c.detail = problems;
      } else {
        c.detail = std::to_string(t.samples.size()) + " samples";
      }
    } else if (ends_with(name, ".records.json")) {
      c.kind = "records";
      const std::vector<ShapeRecord> records = load_records(p);
      std::size_t agree = 0;
      std::string bad;
      for (const ShapeRecord& r : records) {
        if (classify(r.op_name, rules) == r.group) {
          ++agree;
        } else {
          bad += (bad.empty() ? "" : ", ") + r.op_name + " -> " + std::string(group_name(classify(r.op_name, rules))) +
                 " (file says " + std::string(group_name(r.group)) + ")";
        }
      }
      c.detail = std::to_string(agree) + "/" + std::to_string(records.size()) + " classified as recorded";
      if (!bad.empty()) {
        c.ok = false;
        c.detail += ": " + bad;
      }
    } else if (ends_with(name, ".chrome.json")) {
      c.kind = "chrome";
      const NormalizedTrace t = convert_chrome_trace(p, rules);
      c.detail = std::to_string(t.samples.size()) + " root events";
    } else if (ends_with(name, ".rules.json")) {
      c.kind = "rules";
      c.detail = std::to_string(load_rules(p).rules().size()) + " rules";
    } else if (ends_with(name, ".ubench.json")) {
      c.kind = "suite";
      c.detail = std::to_string(load_suite(p).size()) + " specs";
    } else {
      c.kind = "";
    }
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = e.what();
  }
  return c;
}

}  // namespace

std::vector<FixtureCheck> check_fixtures(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("fixture directory '" + dir + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const RuleSet rules = default_rules();
  std::vector<FixtureCheck> out;
  for (const fs::path& f : files) {
    FixtureCheck c = check_file(f, rules);
    if (!c.kind.empty()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<FixtureCheck> verify_fixtures(const std::string& dir) {
  std::vector<FixtureCheck> checks = check_fixtures(dir);
  std::string failures;
  for (const FixtureCheck& c : checks) {
    if (!c.ok) failures += "\n  " + c.file + ": " + c.detail;
  }
  if (!failures.empty()) throw FixtureError("fixture check failed:" + failures);
  return checks;
}

}  // namespace opbench
