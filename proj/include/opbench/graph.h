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

#ifndef OPBENCH_GRAPH_H_
#define OPBENCH_GRAPH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "opbench/taxonomy.h"

namespace opbench {

inline constexpr std::string_view kGraphVersion = "opbench-graph/1";

enum class DType { kF32, kI64, kBool };

std::string_view dtype_name(DType dtype);
std::optional<DType> parse_dtype(std::string_view name);

using Dims = std::vector<std::int64_t>;

// Shape/stride/dtype descriptor. Absent strides mean contiguous row-major.
struct TensorSpec {
  Dims dims;
  std::optional<Dims> strides;
  DType dtype = DType::kF32;

  std::int64_t numel() const;
  bool operator==(const TensorSpec&) const = default;
};

inline constexpr std::int64_t kMaxElements = std::int64_t{1} << 31;

// Empty string when valid, otherwise a description of the first violation.
std::string check_spec(const TensorSpec& spec);
std::string check_dims(const Dims& dims);

Dims contiguous_strides(const Dims& dims);

// Operator attribute value. Lists of whole numbers decode as int lists.
using AttrValue = std::variant<bool, std::int64_t, double, std::string,
                               std::vector<std::int64_t>, std::vector<double>>;
using AttrMap = std::map<std::string, AttrValue>;

// Typed attribute lookups. Integers are accepted where a double is asked for.
std::optional<std::int64_t> attr_int(const AttrMap& attrs, const std::string& key);
std::optional<double> attr_double(const AttrMap& attrs, const std::string& key);
std::optional<std::string> attr_string(const AttrMap& attrs, const std::string& key);
std::optional<std::vector<std::int64_t>> attr_ints(const AttrMap& attrs,
                                                   const std::string& key);
std::optional<std::vector<double>> attr_doubles(const AttrMap& attrs,
                                                const std::string& key);

struct GraphNode {
  std::string id;
  std::string op_name;
  AttrMap attrs;
  // Value ids: a graph input id, a node id (its first output), or "node:k".
  std::vector<std::string> inputs;
  std::vector<TensorSpec> input_specs;
  std::vector<TensorSpec> output_specs;

  bool operator==(const GraphNode&) const = default;
};

struct GraphInput {
  std::string id;
  TensorSpec spec;

  bool operator==(const GraphInput&) const = default;
};

struct GraphMetadata {
  std::string model_name;
  std::optional<std::int64_t> parameter_count;
  std::optional<std::int64_t> batch_size;
  AttrMap extra;

  bool operator==(const GraphMetadata&) const = default;
};

struct OperatorGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphInput> graph_inputs;
  std::vector<std::string> graph_outputs;
  GraphMetadata metadata;

  bool operator==(const OperatorGraph&) const = default;
};

// Splits "node:k" into ("node", k); a bare id maps to output 0.
std::pair<std::string, std::size_t> split_value_id(std::string_view value_id);

// Throws ValidationError naming the offending node or value id.
void validate_graph(const OperatorGraph& graph);

// Node ids in execution order: producers first, ties by file order.
std::vector<std::string> topo_order(const OperatorGraph& graph);

// Parses + validates. Throws IoError, SchemaError/VersionError, ValidationError.
OperatorGraph load_graph(const std::string& path);
OperatorGraph parse_graph(std::string_view json_text);

// Canonical form: sorted keys, no insignificant whitespace.
std::string serialize_graph(const OperatorGraph& graph);
void save_graph(const OperatorGraph& graph, const std::string& path);

// Deduplicated (operator, input shapes, attributes) tuple harvested from a
// profiling run.
struct ShapeRecord {
  std::string op_name;
  OperatorGroup group = OperatorGroup::kUncategorized;
  std::vector<Dims> input_shapes;
  AttrMap attrs;
  std::string source_model;
  std::int64_t count = 1;
  // Informational only, e.g. the framework module that implemented the op.
  std::string implementation;

  bool operator==(const ShapeRecord&) const = default;
};

inline constexpr std::string_view kRecordsVersion = "opbench-records/1";

std::vector<ShapeRecord> load_records(const std::string& path);
std::string serialize_records(const std::vector<ShapeRecord>& records);
void save_records(const std::vector<ShapeRecord>& records, const std::string& path);

}  // namespace opbench

#endif  // OPBENCH_GRAPH_H_
