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

#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "opbench/errors.h"
#include "opbench/graph.h"
#include "opbench/json_io.h"
#include "test_util.h"

namespace opbench {
namespace {

TensorSpec f32(Dims d) { return TensorSpec{std::move(d), std::nullopt, DType::kF32}; }

GraphNode unary(std::string id, std::string op, std::string input, Dims dims) {
  GraphNode n;
  n.id = std::move(id);
  n.op_name = std::move(op);
  n.inputs = {std::move(input)};
  n.input_specs = {f32(dims)};
  n.output_specs = {f32(dims)};
  return n;
}

OperatorGraph chain() {
  OperatorGraph g;
  g.metadata.model_name = "chain";
  g.graph_inputs = {{"x", f32({2})}};
  g.nodes = {unary("a", "relu", "x", {2}), unary("b", "relu", "a", {2}), unary("c", "relu", "b", {2})};
  g.graph_outputs = {"c"};
  return g;
}

TEST(Graph, ToyVitFixtureLoads) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  EXPECT_EQ(g.nodes.size(), 24u);
  EXPECT_EQ(g.metadata.model_name, "toy_vit");
  EXPECT_NO_THROW(validate_graph(g));
}

TEST(Graph, DanglingReferenceNamesTheId) {
  OperatorGraph g = chain();
  g.nodes[1].inputs = {"x9"};
  try {
    validate_graph(g);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.subject(), "x9");
    EXPECT_NE(std::string(e.what()).find("x9"), std::string::npos);
  }
}

TEST(Graph, EmptyGraphIsValid) {
  OperatorGraph g;
  g.metadata.model_name = "empty";
  EXPECT_NO_THROW(validate_graph(g));
  EXPECT_TRUE(topo_order(g).empty());
  testing::TempDir dir;
  save_graph(g, dir.file("empty.graph.json"));
  EXPECT_EQ(load_graph(dir.file("empty.graph.json")), g);
}

TEST(Graph, ToyVitRoundTripIsByteIdentical) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  testing::TempDir dir;
  save_graph(g, dir.file("a.json"));
  const OperatorGraph back = load_graph(dir.file("a.json"));
  EXPECT_EQ(back, g);
  save_graph(back, dir.file("b.json"));
  EXPECT_EQ(json_io::read_file(dir.file("a.json")), json_io::read_file(dir.file("b.json")));
}

TEST(Graph, CanonicalFormSortsAttrKeys) {
  const std::string text = R"({"version":"opbench-graph/1","metadata":{"model_name":"m"},
    "graph_inputs":[{"id":"x","spec":{"dims":[2],"dtype":"f32"}}],
    "nodes":[{"id":"n","op_name":"relu","attrs":{"zeta":1,"alpha":2.5,"mid":[1,2]},
              "inputs":["x"],"input_specs":[{"dims":[2],"dtype":"f32"}],
              "output_specs":[{"dims":[2],"dtype":"f32"}]}],
    "graph_outputs":["n"]})";
  const std::string canon = serialize_graph(parse_graph(text));
  EXPECT_LT(canon.find("\"alpha\""), canon.find("\"mid\""));
  EXPECT_LT(canon.find("\"mid\""), canon.find("\"zeta\""));
  EXPECT_EQ(canon.find('\n'), std::string::npos);
  EXPECT_EQ(serialize_graph(parse_graph(canon)), canon);
}

TEST(Graph, InputSpecLengthMismatchRejected) {
  OperatorGraph g = chain();
  g.nodes[1].input_specs.push_back(f32({2}));
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(Graph, SpecDisagreeingWithProducerRejected) {
  OperatorGraph g = chain();
  g.nodes[1].input_specs = {f32({3})};
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(Graph, DuplicateIdsRejected) {
  OperatorGraph g = chain();
  g.nodes[2].id = "a";
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(Graph, UnproducedOutputRejected) {
  OperatorGraph g = chain();
  g.graph_outputs = {"nope"};
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(Graph, CycleRejected) {
  OperatorGraph g = chain();
  g.nodes[0].inputs = {"c"};
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(Graph, BadSpecsRejected) {
  EXPECT_FALSE(check_dims({}).empty());
  EXPECT_FALSE(check_dims({2, 0}).empty());
  EXPECT_FALSE(check_dims({-1}).empty());
  EXPECT_FALSE(check_dims({1 << 16, 1 << 16}).empty());
  EXPECT_TRUE(check_dims({4663, 4}).empty());
  EXPECT_FALSE(check_spec(TensorSpec{{2, 3}, Dims{1}, DType::kF32}).empty());
  OperatorGraph g = chain();
  g.graph_inputs[0].spec.dims = {0};
  EXPECT_THROW(validate_graph(g), ValidationError);
}

TEST(Graph, SchemaErrors) {
  EXPECT_THROW(parse_graph("not json"), SchemaError);
  EXPECT_THROW(parse_graph(R"({"version":"opbench-graph/1"})"), SchemaError);
  EXPECT_THROW(parse_graph(R"({"version":"opbench-graph/7","metadata":{},"graph_inputs":[],"nodes":[],
                              "graph_outputs":[]})"),
               VersionError);
  EXPECT_THROW(load_graph("/nonexistent/graph.json"), IoError);
}

TEST(Graph, AttrTypesSurviveRoundTrip) {
  OperatorGraph g = chain();
  g.nodes[0].attrs = {{"b", true},
                      {"i", std::int64_t{-3}},
                      {"d", 0.25},
                      {"s", std::string("bilinear")},
                      {"il", std::vector<std::int64_t>{1, -1, 3}},
                      {"dl", std::vector<double>{0.5, 1.5}}};
  EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  EXPECT_EQ(attr_double(g.nodes[0].attrs, "i"), -3.0);
  EXPECT_EQ(attr_ints(g.nodes[0].attrs, "i"), (std::vector<std::int64_t>{-3}));
  EXPECT_THROW(attr_int(g.nodes[0].attrs, "s"), BadAttr);
  EXPECT_FALSE(attr_int(g.nodes[0].attrs, "absent").has_value());
}

TEST(TopoOrder, Chain) { EXPECT_EQ(topo_order(chain()), (std::vector<std::string>{"a", "b", "c"})); }

TEST(TopoOrder, DiamondKeepsFileOrder) {
  OperatorGraph g;
  g.graph_inputs = {{"x", f32({2})}};
  GraphNode d = unary("d", "add", "b", {2});
  d.inputs.push_back("c");
  d.input_specs.push_back(f32({2}));
  g.nodes = {unary("a", "relu", "x", {2}), unary("b", "relu", "a", {2}), unary("c", "relu", "a", {2}), d};
  g.graph_outputs = {"d"};
  EXPECT_EQ(topo_order(g), (std::vector<std::string>{"a", "b", "c", "d"}));
  std::swap(g.nodes[0], g.nodes[3]);  // file order d, b, c, a
  EXPECT_EQ(topo_order(g), (std::vector<std::string>{"a", "b", "c", "d"}));
}

// Reverse-postorder DFS gives one valid order; compare edge-by-edge instead of
// exact sequence since several orders are valid.
void check_respects_edges(const OperatorGraph& g, const std::vector<std::string>& order) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  ASSERT_EQ(pos.size(), g.nodes.size());
  std::set<std::string> ids;
  for (const GraphNode& n : g.nodes) ids.insert(n.id);
  for (const GraphNode& n : g.nodes) {
    ASSERT_TRUE(pos.count(n.id));
    for (const std::string& in : n.inputs) {
      const std::string producer = split_value_id(in).first;
      if (ids.count(producer)) {
        EXPECT_LT(pos[producer], pos[n.id]) << producer << " -> " << n.id;
      }
    }
  }
}

std::vector<std::string> dfs_order(const OperatorGraph& g) {
  std::map<std::string, const GraphNode*> by_id;
  for (const GraphNode& n : g.nodes) by_id[n.id] = &n;
  std::set<std::string> done;
  std::vector<std::string> out;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    if (done.count(id) || !by_id.count(id)) return;
    done.insert(id);
    for (const std::string& in : by_id[id]->inputs) visit(split_value_id(in).first);
    out.push_back(id);
  };
  for (const GraphNode& n : g.nodes) visit(n.id);
  return out;
}

TEST(TopoOrder, ToyVitAgreesWithDfsOracle) {
  const OperatorGraph g = load_graph(testing::fixture("toy_vit.graph.json"));
  const auto order = topo_order(g);
  check_respects_edges(g, order);
  check_respects_edges(g, dfs_order(g));
  // The fixture is written in a valid order, so the stable sort keeps it.
  std::vector<std::string> file_order;
  for (const GraphNode& n : g.nodes) file_order.push_back(n.id);
  EXPECT_EQ(order, file_order);
  EXPECT_EQ(dfs_order(g), file_order);
}

OperatorGraph random_dag(std::mt19937_64& gen, int n) {
  OperatorGraph g;
  g.metadata.model_name = "random";
  g.metadata.batch_size = 1 + static_cast<std::int64_t>(gen() % 4);
  g.graph_inputs = {{"x", f32({3, 4})}};
  std::vector<std::string> ids{"x"};
  std::vector<GraphNode> nodes;
  for (int i = 0; i < n; ++i) {
    GraphNode node;
    node.id = "n" + std::to_string(i);
    node.op_name = (gen() % 2) ? "add" : "mul";
    for (int k = 0; k < 2; ++k) {
      node.inputs.push_back(ids[gen() % ids.size()]);
      node.input_specs.push_back(f32({3, 4}));
    }
    node.output_specs = {f32({3, 4})};
    if (gen() % 3 == 0) node.attrs["alpha"] = static_cast<double>(gen() % 100) / 8.0;
    ids.push_back(node.id);
    nodes.push_back(std::move(node));
  }
  std::shuffle(nodes.begin(), nodes.end(), gen);
  g.nodes = std::move(nodes);
  g.graph_outputs = {ids.back()};
  return g;
}

TEST(GraphProperty, RandomDagsRoundTripAndSort) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const OperatorGraph g = random_dag(gen, 1 + static_cast<int>(gen() % 30));
    ASSERT_NO_THROW(validate_graph(g));
    const std::string once = serialize_graph(g);
    const OperatorGraph back = parse_graph(once);
    EXPECT_EQ(back, g);
    EXPECT_EQ(serialize_graph(back), once);
    const auto order = topo_order(g);
    check_respects_edges(g, order);
    EXPECT_EQ(topo_order(back), order);
  }
}

TEST(Records, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const auto records = load_records(testing::fixture("nongemm_shapes.records.json"));
  save_records(records, dir.file("r.json"));
  EXPECT_EQ(load_records(dir.file("r.json")), records);
  const auto gelu = std::find_if(records.begin(), records.end(), [](const ShapeRecord& r) {
    return r.op_name == "GELU" && r.source_model == "GPT2-XL";
  });
  ASSERT_NE(gelu, records.end());
  EXPECT_EQ(gelu->input_shapes, (std::vector<Dims>{{1, 8, 6400}}));
  EXPECT_EQ(gelu->implementation, "transformers.activations.GELUActivation");
}

TEST(Records, EmptyShapesRejected) {
  testing::TempDir dir;
  std::ofstream(dir.file("r.json")) << R"([{"op_name":"relu","group":"Activation","input_shapes":[]}])";
  EXPECT_THROW(load_records(dir.file("r.json")), ValidationError);
  std::ofstream(dir.file("s.json")) << R"([{"op_name":"relu","group":"Activation","input_shapes":[[0]]}])";
  EXPECT_THROW(load_records(dir.file("s.json")), ValidationError);
}

}  // namespace
}  // namespace opbench
