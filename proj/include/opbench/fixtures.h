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

#ifndef OPBENCH_FIXTURES_H_
#define OPBENCH_FIXTURES_H_

#include <string>
#include <vector>

namespace opbench {

// Bundled data files, by suffix:
//   *.graph.json    operator graphs           (must validate)
//   *.trace.json    normalized traces         (must parse; an `expected`
//                                              block must match the breakdown
//                                              within 0.01 pct)
//   *.records.json  shape records             (each record's group must equal
//                                              classify(op_name))
//   *.chrome.json   Chrome traces             (must convert)
//   *.rules.json    taxonomy overlays         (must load)
//   *.ubench.json   microbench suites         (must parse)
struct FixtureCheck {
  std::string file;
  std::string kind;
  bool ok = true;
  std::string detail;
};

// Checks every recognized file under `dir`. Throws FixtureError naming each
// failing file when any check fails.
std::vector<FixtureCheck> verify_fixtures(const std::string& dir);

// Same checks without throwing.
std::vector<FixtureCheck> check_fixtures(const std::string& dir);

}  // namespace opbench

#endif  // OPBENCH_FIXTURES_H_
