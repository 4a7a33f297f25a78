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

#include "opbench/profiler.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

#include "opbench/errors.h"
#include "opbench/json_io.h"
#include "opbench/ops.h"
#include "opbench/random.h"

namespace opbench {

namespace {

using Clock = std::chrono::steady_clock;

std::string dims_str(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

double elapsed_us(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::micro>(b - a).count();
}

struct ValueRef {
  int producer = -1;  // position in execution order; -1 for a graph input
  std::size_t output = 0;
  std::string input_id;
};

struct Plan {
  std::vector<const GraphNode*> nodes;
  std::vector<BoundOp> ops;
  std::vector<std::vector<ValueRef>> args;
  std::vector<ValueRef> outputs;
  std::vector<std::string> output_ids;
};

Plan make_plan(const OperatorGraph& graph, std::uint64_t seed) {
  validate_graph(graph);
  std::unordered_map<std::string, const GraphNode*> by_id;
  for (const GraphNode& n : graph.nodes) by_id.emplace(n.id, &n);
  std::set<std::string> graph_inputs;
  for (const GraphInput& in : graph.graph_inputs) graph_inputs.insert(in.id);

  Plan plan;
  std::unordered_map<std::string, int> position;
  for (const std::string& id : topo_order(graph)) {
    position.emplace(id, static_cast<int>(plan.nodes.size()));
    plan.nodes.push_back(by_id.at(id));
  }
  auto resolve = [&](const std::string& ref) {
    if (graph_inputs.count(ref)) return ValueRef{-1, 0, ref};
    auto [node, k] = split_value_id(ref);
    return ValueRef{position.at(node), k, {}};
  };
  for (const GraphNode* node : plan.nodes) {
    try {
      plan.ops.push_back(BoundOp::bind(*node, seed));
    } catch (const ExecError&) {
      throw;
    } catch (const std::exception& e) {
      throw ExecError(node->id, e.what());
    }
    std::vector<ValueRef> refs;
    for (const std::string& ref : node->inputs) refs.push_back(resolve(ref));
    plan.args.push_back(std::move(refs));
  }
  for (const std::string& ref : graph.graph_outputs) {
    plan.outputs.push_back(resolve(ref));
    plan.output_ids.push_back(ref);
  }
  return plan;
}

void check_outputs(const GraphNode& node, OpKind kind, const std::vector<Tensor>& outs) {
  if (node.output_specs.empty()) return;
  if (outs.size() != node.output_specs.size()) {
    throw ExecError(node.id, "produced " + std::to_string(outs.size()) + " outputs, spec lists " +
                                 std::to_string(node.output_specs.size()));
  }
  for (std::size_t k = 0; k < outs.size(); ++k) {
    const Dims& want = node.output_specs[k].dims;
    if (kind == OpKind::kNms) {
      // The spec holds the capacity; fewer boxes may survive.
      if (outs[k].defined() && (outs[k].rank() != 1 || outs[k].dims()[0] > want[0])) {
        throw ExecError(node.id, "nms kept " + dims_str(outs[k].dims()) + " boxes, capacity " + dims_str(want));
      }
      continue;
    }
    if (outs[k].dims() != want || outs[k].dtype() != node.output_specs[k].dtype) {
      throw ExecError(node.id, "output " + std::to_string(k) + " is " + dims_str(outs[k].dims()) + " " +
                                   std::string(dtype_name(outs[k].dtype())) + ", spec says " + dims_str(want) + " " +
                                   std::string(dtype_name(node.output_specs[k].dtype)));
    }
  }
}

// Runs every node once. When `times` is non-null, times[i] receives the
// kernel time of node i; only the run() call sits inside the timed region.
std::vector<std::vector<Tensor>> run_pass(const Plan& plan, const TensorMap& inputs, std::vector<double>* times) {
  std::vector<std::vector<Tensor>> values(plan.nodes.size());
  std::vector<Tensor> args;
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    const GraphNode& node = *plan.nodes[i];
    args.clear();
    for (const ValueRef& r : plan.args[i]) {
      if (r.producer < 0) {
        args.push_back(inputs.at(r.input_id));
        continue;
      }
      const auto& produced = values[static_cast<std::size_t>(r.producer)];
      if (r.output >= produced.size()) {
        throw ExecError(node.id, "input refers to output " + std::to_string(r.output) + " of a node with " +
                                     std::to_string(produced.size()) + " outputs");
      }
      args.push_back(produced[r.output]);
    }
    std::vector<Tensor> outs;
    try {
      const auto t0 = Clock::now();
      outs = plan.ops[i].run(args);
      const auto t1 = Clock::now();
      if (times != nullptr) (*times)[i] = elapsed_us(t0, t1);
    } catch (const ExecError&) {
      throw;
    } catch (const std::exception& e) {
      throw ExecError(node.id, e.what());
    }
    check_outputs(node, plan.ops[i].kind(), outs);
    values[i] = std::move(outs);
  }
  return values;
}

TensorMap collect_outputs(const Plan& plan, const TensorMap& inputs,
                          const std::vector<std::vector<Tensor>>& values) {
  TensorMap out;
  for (std::size_t i = 0; i < plan.outputs.size(); ++i) {
    const ValueRef& r = plan.outputs[i];
    if (r.producer < 0) {
      out[plan.output_ids[i]] = inputs.at(r.input_id);
    } else {
      const auto& produced = values[static_cast<std::size_t>(r.producer)];
      if (r.output >= produced.size()) {
        throw ExecError(plan.output_ids[i], "graph output refers to a missing node output");
      }
      out[plan.output_ids[i]] = produced[r.output];
    }
  }
  return out;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return lo + (hi - lo) / 2.0;
}

std::int64_t measure_clock_resolution_ns() {
  std::int64_t best = 0;
  for (int i = 0; i < 200; ++i) {
    const auto a = Clock::now();
    auto b = Clock::now();
    while (b == a) b = Clock::now();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count();
    if (best == 0 || ns < best) best = ns;
  }
  return std::max<std::int64_t>(best, 1);
}

TensorMap prepare_inputs(const OperatorGraph& graph, const TensorMap& inputs, std::uint64_t seed) {
  std::set<std::string> declared;
  TensorMap out;
  for (const GraphInput& in : graph.graph_inputs) {
    declared.insert(in.id);
    auto it = inputs.find(in.id);
    if (it != inputs.end()) {
      const Tensor& t = it->second;
      if (!t.defined() || t.dims() != in.spec.dims || t.dtype() != in.spec.dtype) {
        throw InputMismatch("input '" + in.id + "' is " + (t.defined() ? dims_str(t.dims()) : "undefined") +
                            ", graph declares " + dims_str(in.spec.dims) + " " +
                            std::string(dtype_name(in.spec.dtype)));
      }
      out[in.id] = t;
    } else if (in.spec.dtype == DType::kF32) {
      Rng rng(derive_seed(seed, "input:" + in.id));
      out[in.id] = rng.tensor(in.spec.dims);
    } else {
      out[in.id] = Tensor::zeros(in.spec.dims, in.spec.dtype);
    }
  }
  for (const auto& [id, t] : inputs) {
    if (!declared.count(id)) throw InputMismatch("'" + id + "' is not a graph input");
  }
  return out;
}

TensorMap execute_graph(const OperatorGraph& graph, const TensorMap& inputs, std::uint64_t seed) {
  const Plan plan = make_plan(graph, seed);
  const TensorMap feed = prepare_inputs(graph, inputs, seed);
  return collect_outputs(plan, feed, run_pass(plan, feed, nullptr));
}

ProfileRun profile_graph(const OperatorGraph& graph, const TensorMap& inputs, const ProfileConfig& config,
                         TensorMap* outputs) {
  if (config.warmup < 0) throw BadAttr("warmup must be >= 0");
  if (config.repeats < 1) throw BadAttr("repeats must be >= 1");
  const Plan plan = make_plan(graph, config.seed);
  const TensorMap feed = prepare_inputs(graph, inputs, config.seed);
  const RuleSet rules = config.rules ? *config.rules : default_rules();

  for (int w = 0; w < config.warmup; ++w) run_pass(plan, feed, nullptr);

  const std::size_t n = plan.nodes.size();
  std::vector<std::vector<double>> per_node(n, std::vector<double>(static_cast<std::size_t>(config.repeats)));
  std::vector<double> totals;
  std::vector<double> times(n);
  std::vector<std::vector<Tensor>> last;
  for (int r = 0; r < config.repeats; ++r) {
    const auto t0 = Clock::now();
    last = run_pass(plan, feed, &times);
    const auto t1 = Clock::now();
    totals.push_back(elapsed_us(t0, t1));
    for (std::size_t i = 0; i < n; ++i) per_node[i][static_cast<std::size_t>(r)] = times[i];
  }

  ProfileRun run;
  run.model_name = graph.metadata.model_name;
  run.batch_size = graph.metadata.batch_size.value_or(1);
  run.repeats = config.repeats;
  run.clock_resolution_ns = measure_clock_resolution_ns();
  run.total_wall_time_us = median(totals);
  for (std::size_t i = 0; i < n; ++i) {
    const GraphNode& node = *plan.nodes[i];
    ProfileSample s;
    s.node_id = node.id;
    s.op_name = node.op_name;
    s.group = classify(node.op_name, rules);
    s.wall_time_us = median(per_node[i]);
    s.flops = flop_count(node).value;
    for (const TensorSpec& spec : node.input_specs) s.input_shapes.push_back(spec.dims);
    s.attrs = node.attrs;
    s.device = Device::kHost;
    run.samples.push_back(std::move(s));
  }
  if (outputs != nullptr) *outputs = collect_outputs(plan, feed, last);
  return run;
}

std::vector<ShapeRecord> capture_shape_records(const ProfileRun& run, bool include_gemm) {
  std::vector<ShapeRecord> out;
  std::map<std::string, std::size_t> index;
  for (const ProfileSample& s : run.samples) {
    if (is_gemm(s.group) && !include_gemm) continue;
    json_io::Json key = json_io::Json::array();
    key.push_back(s.op_name);
    key.push_back(s.input_shapes);
    key.push_back(json_io::to_json(s.attrs));
    const std::string k = json_io::canonical(key);
    if (auto it = index.find(k); it != index.end()) {
      ++out[it->second].count;
      continue;
    }
    index.emplace(k, out.size());
    ShapeRecord r;
    r.op_name = s.op_name;
    r.group = s.group;
    r.input_shapes = s.input_shapes;
    r.attrs = s.attrs;
    r.source_model = run.model_name;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace opbench
