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

#include "opbench/microbench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "opbench/errors.h"
#include "opbench/json_io.h"
#include "opbench/ops.h"
#include "opbench/profiler.h"
#include "opbench/random.h"

namespace opbench {

using json_io::Json;

namespace {

// Seeds stay below 2^53 so JSON readers that use doubles keep them exact.
constexpr std::uint64_t kSeedMask = (std::uint64_t{1} << 53) - 1;

std::string dims_str(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

Json spec_json(const MicrobenchSpec& s) {
  Json shapes = Json::array();
  for (const Dims& d : s.input_shapes) shapes.push_back(d);
  return Json{{"op_name", s.op_name},
              {"group", std::string(group_name(s.group))},
              {"input_shapes", std::move(shapes)},
              {"attrs", json_io::to_json(s.attrs)},
              {"source_model", s.source_model},
              {"seed", s.seed}};
}

MicrobenchSpec spec_from_json(const Json& j, const std::string& ctx) {
  MicrobenchSpec s;
  s.op_name = json_io::get_string(j, "op_name", ctx);
  const std::string g = json_io::get_string(j, "group", ctx);
  auto group = parse_group(g);
  if (!group) throw SchemaError(ctx + ": unknown group '" + g + "'");
  s.group = *group;
  const Json& shapes = json_io::field(j, "input_shapes", ctx);
  if (!shapes.is_array() || shapes.empty()) throw SchemaError(ctx + ": input_shapes must be a non-empty list");
  for (const Json& d : shapes) {
    Dims dims = json_io::get_dims(d, ctx);
    if (auto err = check_dims(dims); !err.empty()) throw SchemaError(ctx + ": " + err);
    s.input_shapes.push_back(std::move(dims));
  }
  if (auto it = j.find("attrs"); it != j.end()) s.attrs = json_io::attrs_from_json(*it, ctx + ".attrs");
  if (auto it = j.find("source_model"); it != j.end()) s.source_model = json_io::get_string(j, "source_model", ctx);
  const Json& seed = json_io::field(j, "seed", ctx);
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw SchemaError(ctx + ": seed must be a non-negative integer");
  }
  s.seed = seed.get<std::uint64_t>();
  return s;
}

double elapsed_us(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::micro>(b - a).count();
}

void check_finite(const MicrobenchSpec& spec, const std::vector<Tensor>& outs) {
  for (const Tensor& t : outs) {
    if (!t.defined() || t.dtype() != DType::kF32) continue;
    const std::vector<float> v = t.to_f32_vector();
    if (!std::all_of(v.begin(), v.end(), [](float x) { return std::isfinite(x); })) {
      throw ExecError(spec.op_name, "produced a non-finite value");
    }
  }
}

}  // namespace

std::vector<MicrobenchSpec> generate_specs(const std::vector<ShapeRecord>& records, const RecordFilter& filter) {
  std::vector<const ShapeRecord*> kept;
  for (const ShapeRecord& r : records) {
    if (!filter || filter(r)) kept.push_back(&r);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const ShapeRecord* a, const ShapeRecord* b) {
    if (a->count != b->count) return a->count > b->count;
    return a->op_name < b->op_name;
  });
  std::vector<MicrobenchSpec> specs;
  for (const ShapeRecord* r : kept) {
    MicrobenchSpec s{r->op_name, r->group, r->input_shapes, r->attrs, r->source_model, 0};
    Json content = spec_json(s);
    content.erase("seed");
    s.seed = fnv1a(json_io::canonical(content)) & kSeedMask;
    specs.push_back(std::move(s));
  }
  return specs;
}

GraphNode spec_node(const MicrobenchSpec& spec) {
  GraphNode node;
  node.id = spec.op_name;
  node.op_name = spec.op_name;
  node.attrs = spec.attrs;
  for (std::size_t i = 0; i < spec.input_shapes.size(); ++i) {
    node.inputs.push_back("in" + std::to_string(i));
    node.input_specs.push_back(TensorSpec{spec.input_shapes[i], std::nullopt, DType::kF32});
  }
  return node;
}

bool spec_runnable(const MicrobenchSpec& spec) { return resolve_op(spec.op_name).has_value(); }

std::vector<Tensor> synthesize_inputs(const MicrobenchSpec& spec) {
  const auto kind = resolve_op(spec.op_name);
  Rng rng(derive_seed(spec.seed, "inputs"));
  std::vector<Tensor> out;
  for (std::size_t i = 0; i < spec.input_shapes.size(); ++i) {
    const Dims& dims = spec.input_shapes[i];
    if (kind == OpKind::kNms && i == 0 && dims.size() == 2 && dims[1] == 4) {
      std::vector<float> boxes(static_cast<std::size_t>(dims[0] * 4));
      for (std::int64_t b = 0; b < dims[0]; ++b) {
        const float x1 = rng.uniform(0.0f, 100.0f);
        const float y1 = rng.uniform(0.0f, 100.0f);
        const float w = std::fabs(rng.uniform(-1.0f, 1.0f)) * 50.0f;
        const float h = std::fabs(rng.uniform(-1.0f, 1.0f)) * 50.0f;
        float* row = boxes.data() + b * 4;
        row[0] = x1;
        row[1] = y1;
        row[2] = x1 + w;
        row[3] = y1 + h;
      }
      out.push_back(Tensor::from_vector(dims, std::move(boxes)));
    } else if (kind == OpKind::kNms && i == 1) {
      out.push_back(rng.tensor(dims, 0.0f, 1.0f));
    } else if (kind == OpKind::kDiv && i == 1) {
      out.push_back(rng.tensor(dims, 1.0f, 2.0f));
    } else {
      out.push_back(rng.tensor(dims));
    }
  }
  return out;
}

std::vector<Tensor> run_once(const MicrobenchSpec& spec) {
  if (!spec_runnable(spec)) throw UnrunnableSpec("no kernel for operator '" + spec.op_name + "'");
  const BoundOp op = BoundOp::bind(spec_node(spec), spec.seed);
  return op.run(synthesize_inputs(spec));
}

MicrobenchStats compute_stats(const std::vector<double>& t) {
  MicrobenchStats s;
  if (t.empty()) return s;
  s.min = *std::min_element(t.begin(), t.end());
  s.median = median(t);
  double sum = 0.0;
  for (double v : t) sum += v;
  s.mean = sum / static_cast<double>(t.size());
  double sq = 0.0;
  for (double v : t) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(t.size()));
  return s;
}

MicrobenchResult run_spec(const MicrobenchSpec& spec, const MicrobenchConfig& config) {
  if (config.iterations < 1) throw BadAttr("iterations must be >= 1");
  if (config.warmup < 0) throw BadAttr("warmup must be >= 0");
  if (!spec_runnable(spec)) throw UnrunnableSpec("no kernel for operator '" + spec.op_name + "'");
  const GraphNode node = spec_node(spec);
  BoundOp op = [&] {
    try {
      return BoundOp::bind(node, spec.seed);
    } catch (const UnrunnableSpec&) {
      throw;
    } catch (const std::exception& e) {
      throw ExecError(spec.op_name, e.what());
    }
  }();
  const std::vector<Tensor> inputs = synthesize_inputs(spec);

  MicrobenchResult r;
  r.spec = spec;
  r.iterations = config.iterations;
  r.warmup = config.warmup;
  r.flops = flop_count(node).value;
  try {
    for (int i = 0; i < config.warmup; ++i) op.run(inputs);
    std::vector<Tensor> last;
    r.times_us.reserve(static_cast<std::size_t>(config.iterations));
    for (int i = 0; i < config.iterations; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      last = op.run(inputs);
      const auto t1 = std::chrono::steady_clock::now();
      r.times_us.push_back(elapsed_us(t0, t1));
    }
    check_finite(spec, last);
  } catch (const ExecError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExecError(spec.op_name, e.what());
  }
  r.stats = compute_stats(r.times_us);
  r.throughput_gflops = r.flops > 0 && r.stats.median > 0.0
                            ? static_cast<double>(r.flops) / (r.stats.median * 1e3)
                            : 0.0;
  return r;
}

std::vector<MicrobenchResult> run_suite(const std::vector<MicrobenchSpec>& specs, const MicrobenchConfig& config) {
  std::vector<MicrobenchResult> out;
  for (const MicrobenchSpec& spec : specs) {
    try {
      out.push_back(run_spec(spec, config));
    } catch (const UnrunnableSpec& e) {
      MicrobenchResult r;
      r.spec = spec;
      r.runnable = false;
      r.error = e.what();
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      MicrobenchResult r;
      r.spec = spec;
      r.error = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string serialize_suite(const std::vector<MicrobenchSpec>& specs) {
  Json list = Json::array();
  for (const MicrobenchSpec& s : specs) list.push_back(spec_json(s));
  return json_io::canonical(Json{{"version", std::string(kSuiteVersion)}, {"specs", std::move(list)}});
}

std::vector<MicrobenchSpec> parse_suite(std::string_view text) {
  Json doc = json_io::parse_text(text, "suite");
  const Json* list = &doc;
  if (doc.is_object()) {
    const std::string version = json_io::get_string(doc, "version", "suite");
    if (version != kSuiteVersion) throw VersionError("unsupported suite version '" + version + "'");
    list = &json_io::field(doc, "specs", "suite");
  }
  if (!list->is_array()) throw SchemaError("suite: specs must be a list");
  std::vector<MicrobenchSpec> specs;
  for (std::size_t i = 0; i < list->size(); ++i) {
    specs.push_back(spec_from_json((*list)[i], "suite.specs[" + std::to_string(i) + "]"));
  }
  return specs;
}

std::vector<MicrobenchSpec> load_suite(const std::string& path) { return parse_suite(json_io::read_file(path)); }

void save_suite(const std::vector<MicrobenchSpec>& specs, const std::string& path) {
  json_io::write_file(path, serialize_suite(specs));
}

std::string serialize_results(const std::vector<MicrobenchResult>& results) {
  Json list = Json::array();
  for (const MicrobenchResult& r : results) {
    Json j{{"spec", spec_json(r.spec)},
           {"runnable", r.runnable},
           {"iterations", r.iterations},
           {"warmup", r.warmup},
           {"times_us", r.times_us},
           {"stats", Json{{"min", r.stats.min}, {"median", r.stats.median}, {"mean", r.stats.mean}, {"std", r.stats.std}}},
           {"flops", r.flops},
           {"throughput_gflops", r.throughput_gflops}};
    if (!r.error.empty()) j["error"] = r.error;
    list.push_back(std::move(j));
  }
  return json_io::canonical(Json{{"version", std::string(kResultsVersion)}, {"results", std::move(list)}});
}

std::vector<MicrobenchResult> parse_results(std::string_view text) {
  Json doc = json_io::parse_text(text, "results");
  const std::string version = json_io::get_string(doc, "version", "results");
  if (version != kResultsVersion) throw VersionError("unsupported results version '" + version + "'");
  const Json& list = json_io::field(doc, "results", "results");
  if (!list.is_array()) throw SchemaError("results: results must be a list");
  std::vector<MicrobenchResult> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ctx = "results[" + std::to_string(i) + "]";
    const Json& j = list[i];
    MicrobenchResult r;
    r.spec = spec_from_json(json_io::field(j, "spec", ctx), ctx + ".spec");
    const Json& runnable = json_io::field(j, "runnable", ctx);
    if (!runnable.is_boolean()) throw SchemaError(ctx + ": runnable must be a boolean");
    r.runnable = runnable.get<bool>();
    r.iterations = static_cast<int>(json_io::get_int(j, "iterations", ctx));
    r.warmup = static_cast<int>(json_io::get_int(j, "warmup", ctx));
    const Json& times = json_io::field(j, "times_us", ctx);
    if (!times.is_array()) throw SchemaError(ctx + ": times_us must be a list");
    for (const Json& t : times) {
      if (!t.is_number()) throw SchemaError(ctx + ": times_us must hold numbers");
      r.times_us.push_back(t.get<double>());
    }
    const Json& st = json_io::field(j, "stats", ctx);
    r.stats = MicrobenchStats{json_io::get_number(st, "min", ctx), json_io::get_number(st, "median", ctx),
                              json_io::get_number(st, "mean", ctx), json_io::get_number(st, "std", ctx)};
    r.flops = json_io::get_int(j, "flops", ctx);
    r.throughput_gflops = json_io::get_number(j, "throughput_gflops", ctx);
    if (j.contains("error")) r.error = json_io::get_string(j, "error", ctx);
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_table(const std::vector<MicrobenchResult>& results) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof(line), "%-22s %-20s %-26s %12s  %s\n", "op", "group", "shapes", "median_us", "status");
  out += line;
  for (const MicrobenchResult& r : results) {
    std::string shapes;
    for (const Dims& d : r.spec.input_shapes) shapes += (shapes.empty() ? "" : " ") + dims_str(d);
    const std::string status = !r.runnable ? "unrunnable" : (r.error.empty() ? "ok" : "failed");
    std::snprintf(line, sizeof(line), "%-22s %-20s %-26s %12.3f  %s\n", r.spec.op_name.c_str(),
                  std::string(group_name(r.spec.group)).c_str(), shapes.c_str(), r.stats.median, status.c_str());
    out += line;
  }
  return out;
}

}  // namespace opbench
