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

#include <filesystem>
#include <fstream>

#include "opbench/errors.h"
#include "opbench/fixtures.h"
#include "opbench/graph.h"
#include "opbench/json_io.h"
#include "opbench/taxonomy.h"
#include "test_util.h"

namespace opbench {
namespace {

namespace fs = std::filesystem;

void copy_fixtures(const testing::TempDir& dir) {
  for (const auto& e : fs::directory_iterator(OPBENCH_FIXTURE_DIR)) {
    if (e.is_regular_file()) fs::copy_file(e.path(), dir.path() / e.path().filename());
  }
}

TEST(Fixtures, BundledSetVerifies) {
  const auto checks = verify_fixtures(OPBENCH_FIXTURE_DIR);
  std::size_t recognized = 0;
  for (const FixtureCheck& c : checks) {
    if (c.kind.empty()) continue;
    ++recognized;
    EXPECT_TRUE(c.ok) << c.file << ": " << c.detail;
  }
  EXPECT_GE(recognized, 10u);
}

TEST(Fixtures, EditedDurationFailsAndNamesFile) {
  testing::TempDir dir;
  copy_fixtures(dir);
  const std::string path = dir.file("gpt2_sample.trace.json");
  std::string text = json_io::read_file(path);
  const auto pos = text.find("\"wall_time_us\": 69.0");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 20, "\"wall_time_us\": 99.0");
  json_io::write_file(path, text);
  try {
    verify_fixtures(dir.path().string());
    FAIL() << "expected FixtureError";
  } catch (const FixtureError& e) {
    EXPECT_NE(std::string(e.what()).find("gpt2_sample.trace.json"), std::string::npos) << e.what();
  }
  const auto checks = check_fixtures(dir.path().string());
  int failing = 0;
  for (const FixtureCheck& c : checks) failing += !c.ok;
  EXPECT_EQ(failing, 1);
}

TEST(Fixtures, TruncatedFileFails) {
  testing::TempDir dir;
  copy_fixtures(dir);
  const std::string path = dir.file("toy_vit.graph.json");
  const std::string text = json_io::read_file(path);
  json_io::write_file(path, text.substr(0, text.size() / 2));
  EXPECT_THROW(verify_fixtures(dir.path().string()), FixtureError);
}

TEST(Fixtures, MissingDirectory) { EXPECT_THROW(check_fixtures("/nonexistent/fixtures"), IoError); }

TEST(Fixtures, GeluRecordIsActivation) {
  const auto records = load_records(testing::fixture("nongemm_shapes.records.json"));
  bool found = false;
  for (const ShapeRecord& r : records) {
    if (r.input_shapes == std::vector<Dims>{{1, 8, 6400}}) {
      found = true;
      EXPECT_EQ(classify(r.op_name, default_rules()), OperatorGroup::kActivation);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Fixtures, ReconstructionsCarryNotes) {
  for (const auto& e : fs::directory_iterator(OPBENCH_FIXTURE_DIR)) {
    const std::string name = e.path().filename().string();
    if (name.size() < 11 || name.substr(name.size() - 11) != ".trace.json") continue;
    const auto j = json_io::parse_text(json_io::read_file(e.path().string()), name);
    EXPECT_TRUE(j.contains("note")) << name;
    EXPECT_TRUE(j.contains("expected")) << name;
  }
}

}  // namespace
}  // namespace opbench
