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

#include "opbench/graph.h"

#include <algorithm>
#include <charconv>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "opbench/errors.h"
#include "opbench/json_io.h"

namespace opbench {

using json_io::Json;

std::string_view dtype_name(DType dtype) {
  switch (dtype) {
    case DType::kF32: return "f32";
    case DType::kI64: return "i64";
    case DType::kBool: return "bool";
  }
  return "f32";
}

std::optional<DType> parse_dtype(std::string_view name) {
  if (name == "f32") return DType::kF32;
  if (name == "i64") return DType::kI64;
  if (name == "bool") return DType::kBool;
  return std::nullopt;
}

std::int64_t TensorSpec::numel() const {
  std::int64_t n = 1;
  for (std::int64_t d : dims) n *= d;
  return n;
}

std::string check_dims(const Dims& dims) {
  if (dims.empty()) return "dims must be non-empty";
  std::int64_t n = 1;
  for (std::int64_t d : dims) {
    if (d < 1) return "every dim must be >= 1";
    if (n > kMaxElements / d) return "element count exceeds 2^31";
    n *= d;
  }
  return {};
}

std::string check_spec(const TensorSpec& spec) {
  if (auto err = check_dims(spec.dims); !err.empty()) return err;
  if (spec.strides) {
    if (spec.strides->size() != spec.dims.size()) return "strides length must equal dims length";
    for (std::int64_t s : *spec.strides) {
      if (s < 0) return "strides must be non-negative";
    }
  }
  return {};
}

Dims contiguous_strides(const Dims& dims) {
  Dims strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

namespace {

template <typename T>
std::optional<T> get_exact(const AttrMap& attrs, const std::string& key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return std::nullopt;
  if (const T* v = std::get_if<T>(&it->second)) return *v;
  throw BadAttr("attribute '" + key + "' has the wrong type");
}

}  // namespace

std::optional<std::int64_t> attr_int(const AttrMap& attrs, const std::string& key) {
  auto it = attrs.find(key);
  if (it != attrs.end()) {
    if (const bool* b = std::get_if<bool>(&it->second)) return *b ? 1 : 0;
  }
  return get_exact<std::int64_t>(attrs, key);
}

std::optional<double> attr_double(const AttrMap& attrs, const std::string& key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
  return get_exact<double>(attrs, key);
}

std::optional<std::string> attr_string(const AttrMap& attrs, const std::string& key) {
  return get_exact<std::string>(attrs, key);
}

std::optional<std::vector<std::int64_t>> attr_ints(const AttrMap& attrs, const std::string& key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return std::vector<std::int64_t>{*i};
  return get_exact<std::vector<std::int64_t>>(attrs, key);
}

std::optional<std::vector<double>> attr_doubles(const AttrMap& attrs, const std::string& key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return std::nullopt;
  if (const auto* ints = std::get_if<std::vector<std::int64_t>>(&it->second)) {
    return std::vector<double>(ints->begin(), ints->end());
  }
  if (const auto* d = std::get_if<double>(&it->second)) return std::vector<double>{*d};
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return std::vector<double>{static_cast<double>(*i)};
  return get_exact<std::vector<double>>(attrs, key);
}

std::pair<std::string, std::size_t> split_value_id(std::string_view value_id) {
  auto colon = value_id.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == value_id.size()) {
    return {std::string(value_id), 0};
  }
  std::size_t index = 0;
  auto tail = value_id.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), index);
  if (ec != std::errc() || ptr != tail.data() + tail.size()) {
    return {std::string(value_id), 0};
  }
  return {std::string(value_id.substr(0, colon)), index};
}

namespace {

struct ValueInfo {
  std::optional<std::size_t> producer;  // node index; empty for graph inputs
  const TensorSpec* spec;
};

// Resolves every value id the graph can reference.
std::unordered_map<std::string, ValueInfo> index_values(const OperatorGraph& graph) {
  std::unordered_map<std::string, ValueInfo> values;
  for (const GraphInput& in : graph.graph_inputs) {
    if (in.id.empty()) throw ValidationError(in.id, "graph input with empty id");
    if (auto err = check_spec(in.spec); !err.empty()) {
      throw ValidationError(in.id, "graph input '" + in.id + "': " + err);
    }
    if (!values.emplace(in.id, ValueInfo{std::nullopt, &in.spec}).second) {
      throw ValidationError(in.id, "duplicate graph input id '" + in.id + "'");
    }
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const GraphNode& node = graph.nodes[i];
    if (node.id.empty() || node.id.find(':') != std::string::npos) {
      throw ValidationError(node.id, "node id '" + node.id + "' must be non-empty and contain no ':'");
    }
    if (node.op_name.empty()) throw ValidationError(node.id, "node '" + node.id + "' has empty op_name");
    if (node.output_specs.empty()) {
      throw ValidationError(node.id, "node '" + node.id + "' declares no outputs");
    }
    for (std::size_t k = 0; k < node.output_specs.size(); ++k) {
      if (auto err = check_spec(node.output_specs[k]); !err.empty()) {
        throw ValidationError(node.id, "node '" + node.id + "' output " + std::to_string(k) + ": " + err);
      }
      ValueInfo info{i, &node.output_specs[k]};
      std::string qualified = node.id + ":" + std::to_string(k);
      if (k == 0 && !values.emplace(node.id, info).second) {
        throw ValidationError(node.id, "duplicate value id '" + node.id + "'");
      }
      values.emplace(qualified, info);
    }
  }
  return values;
}

}  // namespace

void validate_graph(const OperatorGraph& graph) {
  auto values = index_values(graph);
  for (const GraphNode& node : graph.nodes) {
    if (node.inputs.size() != node.input_specs.size()) {
      throw ValidationError(node.id, "node '" + node.id + "': input_specs length " +
                                         std::to_string(node.input_specs.size()) +
                                         " != inputs length " + std::to_string(node.inputs.size()));
    }
    for (std::size_t k = 0; k < node.inputs.size(); ++k) {
      const std::string& ref = node.inputs[k];
      auto it = values.find(ref);
      if (it == values.end()) {
        throw ValidationError(ref, "node '" + node.id + "' references undefined value '" + ref + "'");
      }
      if (auto err = check_spec(node.input_specs[k]); !err.empty()) {
        throw ValidationError(node.id, "node '" + node.id + "' input " + std::to_string(k) + ": " + err);
      }
      const TensorSpec& produced = *it->second.spec;
      if (produced.dims != node.input_specs[k].dims || produced.dtype != node.input_specs[k].dtype) {
        throw ValidationError(node.id, "node '" + node.id + "' input '" + ref +
                                           "' spec disagrees with its producer");
      }
    }
  }
  for (const std::string& out : graph.graph_outputs) {
    if (!values.contains(out)) {
      throw ValidationError(out, "graph output '" + out + "' is not produced by any node");
    }
  }
  topo_order(graph);
}

std::vector<std::string> topo_order(const OperatorGraph& graph) {
  const std::size_t n = graph.nodes.size();
  std::unordered_map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < n; ++i) node_index.emplace(graph.nodes[i].id, i);

  std::vector<std::vector<std::size_t>> consumers(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::unordered_set<std::size_t> producers;
    for (const std::string& ref : graph.nodes[i].inputs) {
      auto it = node_index.find(split_value_id(ref).first);
      if (it != node_index.end()) producers.insert(it->second);
    }
    for (std::size_t p : producers) {
      if (p == i) throw ValidationError(graph.nodes[i].id, "node '" + graph.nodes[i].id + "' consumes itself");
      consumers[p].push_back(i);
    }
    pending[i] = producers.size();
  }

  // Min-heap on file position keeps the order stable.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<std::string> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    order.push_back(graph.nodes[i].id);
    for (std::size_t c : consumers[i]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pending[i] != 0) {
        throw ValidationError(graph.nodes[i].id, "cycle through node '" + graph.nodes[i].id + "'");
      }
    }
  }
  return order;
}

namespace {

constexpr std::string_view kGraphCtx = "graph";

Json graph_to_json(const OperatorGraph& graph) {
  Json meta = Json::object();
  for (const auto& [k, v] : graph.metadata.extra) meta[k] = json_io::to_json(v);
  meta["model_name"] = graph.metadata.model_name;
  if (graph.metadata.parameter_count) meta["parameter_count"] = *graph.metadata.parameter_count;
  if (graph.metadata.batch_size) meta["batch_size"] = *graph.metadata.batch_size;

  Json inputs = Json::array();
  for (const GraphInput& in : graph.graph_inputs) {
    inputs.push_back(Json{{"id", in.id}, {"spec", json_io::to_json(in.spec)}});
  }
  Json nodes = Json::array();
  for (const GraphNode& node : graph.nodes) {
    Json in_specs = Json::array();
    for (const auto& s : node.input_specs) in_specs.push_back(json_io::to_json(s));
    Json out_specs = Json::array();
    for (const auto& s : node.output_specs) out_specs.push_back(json_io::to_json(s));
    nodes.push_back(Json{{"id", node.id},
                         {"op_name", node.op_name},
                         {"attrs", json_io::to_json(node.attrs)},
                         {"inputs", node.inputs},
                         {"input_specs", std::move(in_specs)},
                         {"output_specs", std::move(out_specs)}});
  }
  return Json{{"version", std::string(kGraphVersion)},
              {"metadata", std::move(meta)},
              {"graph_inputs", std::move(inputs)},
              {"nodes", std::move(nodes)},
              {"graph_outputs", graph.graph_outputs}};
}

std::vector<std::string> get_string_list(const Json& value, std::string_view context) {
  if (!value.is_array()) throw SchemaError(std::string(context) + ": expected a list of strings");
  std::vector<std::string> out;
  for (const Json& e : value) {
    if (!e.is_string()) throw SchemaError(std::string(context) + ": expected a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<TensorSpec> get_spec_list(const Json& value, const std::string& context) {
  if (!value.is_array()) throw SchemaError(context + ": expected a list of tensor specs");
  std::vector<TensorSpec> out;
  for (const Json& e : value) out.push_back(json_io::spec_from_json(e, context));
  return out;
}

OperatorGraph graph_from_json(const Json& doc) {
  std::string version = json_io::get_string(doc, "version", kGraphCtx);
  if (version != kGraphVersion) throw VersionError("unsupported graph version '" + version + "'");

  OperatorGraph graph;
  const Json& meta = json_io::field(doc, "metadata", kGraphCtx);
  if (!meta.is_object()) throw SchemaError("graph: metadata must be an object");
  for (auto it = meta.begin(); it != meta.end(); ++it) {
    const std::string& key = it.key();
    if (key == "model_name") {
      graph.metadata.model_name = json_io::get_string(meta, "model_name", "graph.metadata");
    } else if (key == "parameter_count") {
      graph.metadata.parameter_count = json_io::get_int(meta, "parameter_count", "graph.metadata");
    } else if (key == "batch_size") {
      graph.metadata.batch_size = json_io::get_int(meta, "batch_size", "graph.metadata");
    } else {
      graph.metadata.extra.emplace(key, json_io::attr_from_json(it.value(), "graph.metadata." + key));
    }
  }

  const Json& inputs = json_io::field(doc, "graph_inputs", kGraphCtx);
  if (!inputs.is_array()) throw SchemaError("graph: graph_inputs must be a list");
  for (const Json& in : inputs) {
    GraphInput gi;
    gi.id = json_io::get_string(in, "id", "graph.graph_inputs");
    gi.spec = json_io::spec_from_json(json_io::field(in, "spec", "graph input '" + gi.id + "'"),
                                      "graph input '" + gi.id + "'");
    graph.graph_inputs.push_back(std::move(gi));
  }

  const Json& nodes = json_io::field(doc, "nodes", kGraphCtx);
  if (!nodes.is_array()) throw SchemaError("graph: nodes must be a list");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Json& jn = nodes[i];
    GraphNode node;
    node.id = json_io::get_string(jn, "id", "graph.nodes[" + std::to_string(i) + "]");
    const std::string ctx = "node '" + node.id + "'";
    node.op_name = json_io::get_string(jn, "op_name", ctx);
    node.attrs = json_io::attrs_from_json(json_io::field(jn, "attrs", ctx), ctx);
    node.inputs = get_string_list(json_io::field(jn, "inputs", ctx), ctx + ".inputs");
    node.input_specs = get_spec_list(json_io::field(jn, "input_specs", ctx), ctx + ".input_specs");
    node.output_specs = get_spec_list(json_io::field(jn, "output_specs", ctx), ctx + ".output_specs");
    graph.nodes.push_back(std::move(node));
  }
  graph.graph_outputs = get_string_list(json_io::field(doc, "graph_outputs", kGraphCtx), "graph.graph_outputs");
  return graph;
}

}  // namespace

OperatorGraph parse_graph(std::string_view json_text) {
  OperatorGraph graph = graph_from_json(json_io::parse_text(json_text, kGraphCtx));
  validate_graph(graph);
  return graph;
}

OperatorGraph load_graph(const std::string& path) {
  return parse_graph(json_io::read_file(path));
}

std::string serialize_graph(const OperatorGraph& graph) {
  return json_io::canonical(graph_to_json(graph));
}

void save_graph(const OperatorGraph& graph, const std::string& path) {
  json_io::write_file(path, serialize_graph(graph));
}

std::vector<ShapeRecord> load_records(const std::string& path) {
  Json doc = json_io::parse_text(json_io::read_file(path), path);
  const Json* list = &doc;
  if (doc.is_object()) {
    std::string version = json_io::get_string(doc, "version", path);
    if (version != kRecordsVersion) throw VersionError("unsupported records version '" + version + "'");
    list = &json_io::field(doc, "records", path);
  }
  if (!list->is_array()) throw SchemaError(path + ": records must be a list");
  std::vector<ShapeRecord> records;
  for (std::size_t i = 0; i < list->size(); ++i) {
    ShapeRecord r = json_io::record_from_json((*list)[i], path + " records[" + std::to_string(i) + "]");
    if (r.input_shapes.empty()) throw ValidationError(r.op_name, "record '" + r.op_name + "' has no input shapes");
    for (const Dims& d : r.input_shapes) {
      if (auto err = check_dims(d); !err.empty()) throw ValidationError(r.op_name, "record '" + r.op_name + "': " + err);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string serialize_records(const std::vector<ShapeRecord>& records) {
  Json list = Json::array();
  for (const ShapeRecord& r : records) list.push_back(json_io::to_json(r));
  return json_io::canonical(Json{{"version", std::string(kRecordsVersion)}, {"records", std::move(list)}});
}

void save_records(const std::vector<ShapeRecord>& records, const std::string& path) {
  json_io::write_file(path, serialize_records(records));
}

}  // namespace opbench
