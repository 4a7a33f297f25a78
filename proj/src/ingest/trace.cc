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

#include "opbench/trace.h"

#include <cmath>

#include "opbench/errors.h"
#include "opbench/json_io.h"

namespace opbench {

using json_io::Json;

namespace {

constexpr std::string_view kCtx = "trace";

Json sample_to_json(const ProfileSample& s) {
  Json out = Json::object();
  out["node_id"] = s.node_id;
  out["op_name"] = s.op_name;
  out["group"] = std::string(group_name(s.group));
  out["device"] = std::string(device_name(s.device));
  out["wall_time_us"] = s.wall_time_us;
  out["flops"] = s.flops;
  Json shapes = Json::array();
  for (const Dims& d : s.input_shapes) shapes.push_back(d);
  out["input_shapes"] = std::move(shapes);
  if (!s.attrs.empty()) out["attrs"] = json_io::to_json(s.attrs);
  if (!s.children.empty()) {
    Json kids = Json::array();
    for (const ChildKernel& c : s.children) {
      kids.push_back(Json{{"kernel_name", c.kernel_name}, {"wall_time_us", c.wall_time_us}});
    }
    out["children"] = std::move(kids);
  }
  return out;
}

ProfileSample sample_from_json(const Json& j, const std::string& ctx, const RuleSet& rules) {
  ProfileSample s;
  s.node_id = json_io::get_string(j, "node_id", ctx);
  s.op_name = json_io::get_string(j, "op_name", ctx);
  if (auto it = j.find("group"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(ctx + ": group must be a string");
    auto g = parse_group(it->get<std::string>());
    if (!g) throw SchemaError(ctx + ": unknown group '" + it->get<std::string>() + "'");
    s.group = *g;
  } else {
    s.group = classify(s.op_name, rules);
  }
  const std::string dev = json_io::get_string(j, "device", ctx);
  auto d = parse_device(dev);
  if (!d) throw SchemaError(ctx + ": unknown device '" + dev + "'");
  s.device = *d;
  s.wall_time_us = json_io::get_number(j, "wall_time_us", ctx);
  if (!(s.wall_time_us >= 0.0) || !std::isfinite(s.wall_time_us)) {
    throw SchemaError(ctx + ": wall_time_us must be a finite non-negative number");
  }
  s.flops = json_io::get_int(j, "flops", ctx);
  if (s.flops < 0) throw SchemaError(ctx + ": flops must be non-negative");
  const Json& shapes = json_io::field(j, "input_shapes", ctx);
  if (!shapes.is_array()) throw SchemaError(ctx + ": input_shapes must be a list");
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    s.input_shapes.push_back(json_io::get_dims(shapes[i], ctx + ".input_shapes[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("attrs"); it != j.end()) s.attrs = json_io::attrs_from_json(*it, ctx + ".attrs");
  if (auto it = j.find("children"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(ctx + ": children must be a list");
    double sum = 0.0;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string cctx = ctx + ".children[" + std::to_string(i) + "]";
      ChildKernel c{json_io::get_string((*it)[i], "kernel_name", cctx),
                    json_io::get_number((*it)[i], "wall_time_us", cctx)};
      if (!(c.wall_time_us >= 0.0)) throw SchemaError(cctx + ": wall_time_us must be non-negative");
      sum += c.wall_time_us;
      s.children.push_back(std::move(c));
    }
    if (sum > s.wall_time_us * kChildSumTolerance) {
      throw ValidationError(s.node_id, "sample '" + s.node_id + "': child kernels sum to " + std::to_string(sum) +
                                           " us, more than its " + std::to_string(s.wall_time_us) + " us");
    }
  }
  return s;
}

}  // namespace

std::string_view device_name(Device device) {
  return device == Device::kHost ? "host" : "device_external";
}

std::optional<Device> parse_device(std::string_view name) {
  if (name == "host") return Device::kHost;
  if (name == "device_external") return Device::kDeviceExternal;
  return std::nullopt;
}

NormalizedTrace parse_trace_text(std::string_view text, const RuleSet& rules) {
  Json doc = json_io::parse_text(text, kCtx);
  if (!doc.is_object()) throw SchemaError("trace: top level must be an object");
  const std::string version = json_io::get_string(doc, "version", kCtx);
  if (version != kTraceVersion) throw VersionError("unsupported trace version '" + version + "'");
  NormalizedTrace run;
  run.model_name = json_io::get_string(doc, "model_name", kCtx);
  run.batch_size = json_io::get_int(doc, "batch_size", kCtx);
  run.repeats = json_io::get_int(doc, "repeats", kCtx);
  run.total_wall_time_us = json_io::get_number(doc, "total_wall_time_us", kCtx);
  if (doc.contains("clock_resolution_ns")) run.clock_resolution_ns = json_io::get_int(doc, "clock_resolution_ns", kCtx);
  if (auto it = doc.find("expected"); it != doc.end()) run.expected = json_io::attrs_from_json(*it, "trace.expected");
  if (doc.contains("note")) run.note = json_io::get_string(doc, "note", kCtx);
  const Json& samples = json_io::field(doc, "samples", kCtx);
  if (!samples.is_array()) throw SchemaError("trace: samples must be a list");
  run.samples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    run.samples.push_back(sample_from_json(samples[i], "trace.samples[" + std::to_string(i) + "]", rules));
  }
  return run;
}

NormalizedTrace parse_trace(const std::string& path, const RuleSet& rules) {
  return parse_trace_text(json_io::read_file(path), rules);
}

std::string serialize_trace(const ProfileRun& run) {
  Json doc = Json::object();
  doc["version"] = std::string(kTraceVersion);
  doc["model_name"] = run.model_name;
  doc["batch_size"] = run.batch_size;
  doc["repeats"] = run.repeats;
  doc["clock_resolution_ns"] = run.clock_resolution_ns;
  doc["total_wall_time_us"] = run.total_wall_time_us;
  Json samples = Json::array();
  for (const ProfileSample& s : run.samples) samples.push_back(sample_to_json(s));
  doc["samples"] = std::move(samples);
  if (!run.expected.empty()) doc["expected"] = json_io::to_json(run.expected);
  if (!run.note.empty()) doc["note"] = run.note;
  return json_io::canonical(doc);
}

void save_trace(const ProfileRun& run, const std::string& path) { json_io::write_file(path, serialize_trace(run)); }

}  // namespace opbench
