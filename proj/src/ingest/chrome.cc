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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>

#include "opbench/errors.h"
#include "opbench/ingest.h"
#include "opbench/json_io.h"

namespace opbench {

using json_io::Json;

namespace {

std::string id_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return v.dump();
  return "";
}

bool is_device_category(std::string cat) {
  std::transform(cat.begin(), cat.end(), cat.begin(), [](unsigned char c) { return std::tolower(c); });
  return cat.find("kernel") != std::string::npos || cat.rfind("gpu", 0) == 0;
}

std::vector<Dims> read_input_dims(const Json& v, const std::string& ctx) {
  if (!v.is_array()) throw SchemaError(ctx + ": args.input_dims must be a list");
  if (std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number_integer(); })) {
    return v.empty() ? std::vector<Dims>{} : std::vector<Dims>{json_io::get_dims(v, ctx)};
  }
  std::vector<Dims> out;
  // Profilers emit [] for non-tensor arguments; those carry no shape.
  for (const Json& e : v) {
    if (e.is_array() && e.empty()) continue;
    out.push_back(json_io::get_dims(e, ctx));
  }
  return out;
}

}  // namespace

std::vector<ChromeEvent> parse_chrome_events(std::string_view text) {
  Json doc = json_io::parse_text(text, "chrome trace");
  const Json* list = &doc;
  if (doc.is_object()) list = &json_io::field(doc, "traceEvents", "chrome trace");
  if (!list->is_array()) throw SchemaError("chrome trace: expected an event list");
  std::vector<ChromeEvent> events;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const Json& e = (*list)[i];
    const std::string ctx = "chrome trace event " + std::to_string(i);
    if (!e.is_object()) throw SchemaError(ctx + ": expected an object");
    auto ph = e.find("ph");
    if (ph == e.end() || !ph->is_string() || ph->get<std::string>() != "X") continue;
    ChromeEvent ev;
    ev.name = json_io::get_string(e, "name", ctx);
    ev.ts = json_io::get_number(e, "ts", ctx);
    ev.dur = json_io::get_number(e, "dur", ctx);
    if (!std::isfinite(ev.ts) || !std::isfinite(ev.dur) || ev.dur < 0.0) {
      throw SchemaError(ctx + ": ts/dur must be finite and dur non-negative");
    }
    if (auto c = e.find("cat"); c != e.end() && c->is_string()) ev.category = c->get<std::string>();
    const std::string pid = e.contains("pid") ? id_text(e["pid"]) : "";
    const std::string tid = e.contains("tid") ? id_text(e["tid"]) : "";
    ev.thread = pid + "/" + tid;
    if (auto a = e.find("args"); a != e.end() && a->is_object()) {
      if (auto d = a->find("input_dims"); d != a->end()) {
        ev.input_dims = read_input_dims(*d, ctx);
      } else if (auto t = a->find("Input Dims"); t != a->end()) {
        ev.input_dims = read_input_dims(*t, ctx);
      }
      if (auto n = a->find("node_id"); n != a->end() && n->is_string()) ev.node_id = n->get<std::string>();
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<int> containment_forest(const std::vector<ChromeEvent>& events) {
  std::map<std::string, std::vector<int>> threads;
  for (std::size_t i = 0; i < events.size(); ++i) threads[events[i].thread].push_back(static_cast<int>(i));

  std::vector<int> parent(events.size(), -1);
  std::string offenders;
  std::size_t offender_count = 0;
  for (auto& [thread, idx] : threads) {
    // Outer intervals first: earlier start, then longer, then file order.
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      const ChromeEvent& x = events[a];
      const ChromeEvent& y = events[b];
      if (x.ts != y.ts) return x.ts < y.ts;
      if (x.dur != y.dur) return x.dur > y.dur;
      return a < b;
    });
    std::vector<int> stack;
    for (int i : idx) {
      const ChromeEvent& e = events[i];
      const double end = e.ts + e.dur;
      // Sorted by start, so the top contains e unless e ends later.
      while (!stack.empty() && end > events[stack.back()].ts + events[stack.back()].dur) {
        const ChromeEvent& s = events[stack.back()];
        if (e.ts < s.ts + s.dur) {
          if (offender_count < 20) {
            offenders += (offender_count ? ", " : "") + std::string("'") + s.name + "'@" + Json(s.ts).dump() +
                         " / '" + e.name + "'@" + Json(e.ts).dump();
          }
          ++offender_count;
        }
        stack.pop_back();
      }
      if (!stack.empty()) parent[i] = stack.back();
      stack.push_back(i);
    }
  }
  if (offender_count > 0) {
    throw AttributionError(std::to_string(offender_count) + " overlapping but not nested event pair(s) on one thread: " +
                           offenders);
  }
  return parent;
}

NormalizedTrace convert_chrome_trace_text(std::string_view text, const RuleSet& rules, std::string model_name) {
  const std::vector<ChromeEvent> events = parse_chrome_events(text);
  const std::vector<int> parent = containment_forest(events);

  std::vector<int> roots;
  std::vector<std::vector<int>> kids(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (parent[i] < 0) {
      roots.push_back(static_cast<int>(i));
    } else {
      kids[static_cast<std::size_t>(parent[i])].push_back(static_cast<int>(i));
    }
  }
  auto by_time = [&](int a, int b) { return events[a].ts != events[b].ts ? events[a].ts < events[b].ts : a < b; };
  std::sort(roots.begin(), roots.end(), by_time);

  NormalizedTrace run;
  run.model_name = std::move(model_name);
  run.batch_size = 1;
  run.repeats = 1;
  for (int r : roots) {
    const ChromeEvent& e = events[r];
    ProfileSample s;
    s.node_id = e.node_id.empty() ? e.name + "#" + std::to_string(r) : e.node_id;
    s.op_name = e.name;
    s.group = classify(e.name, rules);
    s.wall_time_us = e.dur;
    s.input_shapes = e.input_dims;
    s.device = is_device_category(e.category) ? Device::kDeviceExternal : Device::kHost;
    std::sort(kids[r].begin(), kids[r].end(), by_time);
    for (int c : kids[r]) s.children.push_back(ChildKernel{events[c].name, events[c].dur});
    run.total_wall_time_us += e.dur;
    run.samples.push_back(std::move(s));
  }
  return run;
}

NormalizedTrace convert_chrome_trace(const std::string& path, const RuleSet& rules) {
  return convert_chrome_trace_text(json_io::read_file(path), rules,
                                   std::filesystem::path(path).stem().string());
}

}  // namespace opbench
