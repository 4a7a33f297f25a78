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

#include <algorithm>
#include <random>

#include "opbench/errors.h"
#include "opbench/ingest.h"
#include "opbench/json_io.h"
#include "opbench/report.h"
#include "opbench/trace.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace opbench {
namespace {

using json_io::Json;

Json x_event(const std::string& name, double ts, double dur, int tid = 1, const std::string& cat = "cpu_op") {
  return Json{{"ph", "X"}, {"name", name}, {"cat", cat}, {"ts", ts}, {"dur", dur}, {"pid", 1}, {"tid", tid}};
}

std::string chrome(const Json& events) { return Json{{"traceEvents", events}}.dump(); }

std::vector<oracle::Interval> intervals(const std::vector<ChromeEvent>& ev) {
  std::vector<oracle::Interval> out;
  for (const ChromeEvent& e : ev) out.push_back({e.thread, e.ts, e.dur});
  return out;
}

TEST(Trace, Gpt2FixtureHasNoUncategorized) {
  const NormalizedTrace t = parse_trace(testing::fixture("gpt2_sample.trace.json"), default_rules());
  EXPECT_FALSE(t.samples.empty());
  for (const ProfileSample& s : t.samples) EXPECT_NE(s.group, OperatorGroup::kUncategorized) << s.op_name;
  EXPECT_EQ(breakdown(t)[OperatorGroup::kUncategorized].pct, 0.0);
}

TEST(Trace, UnknownVersionRejected) {
  std::string text = json_io::read_file(testing::fixture("gpt2_sample.trace.json"));
  const auto pos = text.find("opbench-trace/1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 15, "opbench-trace/9");
  EXPECT_THROW(parse_trace_text(text, default_rules()), VersionError);
}

TEST(Trace, ChildOverrunNamesSample) {
  ProfileRun run;
  run.model_name = "m";
  ProfileSample s;
  s.node_id = "parent";
  s.op_name = "relu";
  s.group = OperatorGroup::kActivation;
  s.wall_time_us = 100.0;
  s.children = {{"k1", 60.0}, {"k2", 50.0}};  // 110 > 101
  run.samples = {s};
  run.total_wall_time_us = 100.0;
  try {
    parse_trace_text(serialize_trace(run), default_rules());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.subject(), "parent");
  }
  run.samples[0].children = {{"k1", 60.0}, {"k2", 41.0}};  // exactly at the 1% allowance
  EXPECT_NO_THROW(parse_trace_text(serialize_trace(run), default_rules()));
}

TEST(Trace, MissingGroupIsClassified) {
  const std::string text = R"({"version":"opbench-trace/1","model_name":"m","total_wall_time_us":3,
    "batch_size":1,"repeats":1,"clock_resolution_ns":1,
    "samples":[{"node_id":"a","op_name":"torch.nn.GELU","wall_time_us":3,"device":"host","flops":0,
                 "input_shapes":[[2]]}]})";
  const NormalizedTrace t = parse_trace_text(text, default_rules());
  ASSERT_EQ(t.samples.size(), 1u);
  EXPECT_EQ(t.samples[0].group, OperatorGroup::kActivation);
}

TEST(Trace, RoundTripIsStable) {
  for (const char* name : {"gpt2_sample.trace.json", "fasterrcnn_sample.trace.json", "pair_cpu.trace.json",
                           "pair_gpu.trace.json"}) {
    const NormalizedTrace t = parse_trace(testing::fixture(name), default_rules());
    const std::string once = serialize_trace(t);
    const NormalizedTrace back = parse_trace_text(once, default_rules());
    EXPECT_EQ(back, t) << name;
    EXPECT_EQ(serialize_trace(back), once) << name;
  }
}

TEST(Trace, SaveLoad) {
  testing::TempDir dir;
  const NormalizedTrace t = parse_trace(testing::fixture("gpt2_sample.trace.json"), default_rules());
  save_trace(t, dir.file("t.json"));
  EXPECT_EQ(parse_trace(dir.file("t.json"), default_rules()), t);
  EXPECT_THROW(parse_trace(dir.file("missing.json"), default_rules()), IoError);
}

TEST(Chrome, OuterInner) {
  const Json ev = Json::array({x_event("aten::linear", 0, 100), x_event("gemm_kernel", 10, 50, 1, "kernel")});
  const NormalizedTrace t = convert_chrome_trace_text(chrome(ev), default_rules());
  ASSERT_EQ(t.samples.size(), 1u);
  EXPECT_EQ(t.samples[0].op_name, "aten::linear");
  EXPECT_EQ(t.samples[0].group, OperatorGroup::kGemm);
  ASSERT_EQ(t.samples[0].children.size(), 1u);
  EXPECT_EQ(t.samples[0].children[0].kernel_name, "gemm_kernel");
  EXPECT_EQ(t.samples[0].children[0].wall_time_us, 50.0);
  EXPECT_EQ(t.total_wall_time_us, 100.0);
}

TEST(Chrome, EmptyTraceEvents) {
  const NormalizedTrace t = convert_chrome_trace_text(R"({"traceEvents": []})", default_rules());
  EXPECT_TRUE(t.samples.empty());
  EXPECT_EQ(t.total_wall_time_us, 0.0);
  EXPECT_EQ(breakdown(t).total_time_us, 0.0);
  EXPECT_TRUE(convert_chrome_trace_text("[]", default_rules()).samples.empty());
}

TEST(Chrome, NonCompleteEventsSkipped) {
  Json ev = Json::array({x_event("relu", 0, 5)});
  ev.push_back(Json{{"ph", "M"}, {"name", "thread_name"}, {"pid", 1}, {"tid", 1}});
  ev.push_back(Json{{"ph", "B"}, {"name", "x"}, {"ts", 1}, {"pid", 1}, {"tid", 1}});
  EXPECT_EQ(parse_chrome_events(chrome(ev)).size(), 1u);
}

TEST(Chrome, ZeroDurationKept) {
  const Json ev = Json::array({x_event("relu", 0, 0), x_event("gelu", 5, 3)});
  const NormalizedTrace t = convert_chrome_trace_text(chrome(ev), default_rules());
  ASSERT_EQ(t.samples.size(), 2u);
  EXPECT_EQ(t.samples[0].wall_time_us, 0.0);
  EXPECT_EQ(breakdown(t)[OperatorGroup::kActivation].event_count, 2);
}

TEST(Chrome, OverlapWithoutNestingRejected) {
  const Json ev = Json::array({x_event("a", 0, 10), x_event("b", 5, 10), x_event("c", 100, 10, 2)});
  EXPECT_THROW(convert_chrome_trace_text(chrome(ev), default_rules()), AttributionError);
  // Same intervals on different threads are fine.
  const Json ok = Json::array({x_event("a", 0, 10, 1), x_event("b", 5, 10, 2)});
  EXPECT_EQ(convert_chrome_trace_text(chrome(ok), default_rules()).samples.size(), 2u);
}

TEST(Chrome, DeviceFromCategory) {
  const Json ev =
      Json::array({x_event("relu", 0, 5, 1, "gpu_op"), x_event("k", 10, 5, 2, "kernel"), x_event("gelu", 20, 5)});
  const NormalizedTrace t = convert_chrome_trace_text(chrome(ev), default_rules());
  ASSERT_EQ(t.samples.size(), 3u);
  EXPECT_EQ(t.samples[0].device, Device::kDeviceExternal);
  EXPECT_EQ(t.samples[1].device, Device::kDeviceExternal);
  EXPECT_EQ(t.samples[2].device, Device::kHost);
}

TEST(Chrome, SchemaErrors) {
  EXPECT_THROW(parse_chrome_events("{"), SchemaError);
  EXPECT_THROW(parse_chrome_events(R"({"traceEvents": 3})"), SchemaError);
  EXPECT_THROW(parse_chrome_events(R"([{"ph":"X","name":"a","ts":"soon","dur":1,"pid":1,"tid":1}])"), SchemaError);
}

TEST(Chrome, Nested50MatchesOracle) {
  const std::string text = json_io::read_file(testing::fixture("nested_50.chrome.json"));
  const auto events = parse_chrome_events(text);
  ASSERT_EQ(events.size(), 50u);
  EXPECT_EQ(containment_forest(events), oracle::containment_parents(intervals(events)));

  const NormalizedTrace t = convert_chrome_trace_text(text, default_rules());
  const auto parents = oracle::containment_parents(intervals(events));
  std::size_t roots = 0, direct_children = 0;
  double root_time = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (parents[i] < 0) {
      ++roots;
      root_time += events[i].dur;
    } else if (parents[static_cast<std::size_t>(parents[i])] < 0) {
      ++direct_children;
    }
  }
  EXPECT_EQ(t.samples.size(), roots);
  std::size_t children = 0;
  for (const ProfileSample& s : t.samples) children += s.children.size();
  EXPECT_EQ(children, direct_children);
  EXPECT_DOUBLE_EQ(t.total_wall_time_us, root_time);
  for (std::size_t i = 1; i < t.samples.size(); ++i) {
    EXPECT_FALSE(t.samples[i].wall_time_us < 0);
  }
  // "Input Dims" args populate input_shapes.
  const auto ln = std::find_if(t.samples.begin(), t.samples.end(),
                               [](const ProfileSample& s) { return s.node_id == "t1_n0"; });
  ASSERT_NE(ln, t.samples.end());
  EXPECT_EQ(ln->input_shapes.front(), (Dims{1, 8, 1600}));
}

// Random well-nested forests: generated by recursive subdivision, then shuffled.
void build_forest(std::mt19937_64& gen, Json& out, int tid, double lo, double hi, int depth) {
  double cursor = lo;
  const int count = static_cast<int>(testing::rand_int(gen, 1, 3));
  for (int i = 0; i < count && cursor < hi - 4; ++i) {
    const double start = cursor + static_cast<double>(testing::rand_int(gen, 0, 2));
    const double end = std::min(hi, start + static_cast<double>(testing::rand_int(gen, 1, 40)));
    if (end <= start) break;
    out.push_back(x_event("op" + std::to_string(out.size()), start, end - start, tid));
    if (depth < 3 && end - start > 4) build_forest(gen, out, tid, start, end, depth + 1);
    cursor = end;
  }
}

TEST(ChromeProperty, RandomForestsMatchOracle) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 300; ++trial) {
    Json ev = Json::array();
    for (int tid = 1; tid <= 2; ++tid) build_forest(gen, ev, tid, 0, 200, 0);
    // An exact duplicate now and then.
    if (trial % 5 == 0 && !ev.empty()) ev.push_back(ev[0]);
    std::vector<Json> shuffled(ev.begin(), ev.end());
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const auto events = parse_chrome_events(chrome(Json(shuffled)));
    ASSERT_EQ(containment_forest(events), oracle::containment_parents(intervals(events))) << "trial " << trial;
  }
}

TEST(Chrome, FileConversion) {
  const NormalizedTrace t = convert_chrome_trace(testing::fixture("nested_50.chrome.json"), default_rules());
  EXPECT_FALSE(t.model_name.empty());
  EXPECT_NO_THROW(parse_trace_text(serialize_trace(t), default_rules()));
}

}  // namespace
}  // namespace opbench
