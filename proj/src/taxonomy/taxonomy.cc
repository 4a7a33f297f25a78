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

#include "opbench/taxonomy.h"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <unordered_set>

#include "opbench/errors.h"
#include "opbench/json_io.h"

namespace opbench {

std::string_view group_name(OperatorGroup group) {
  switch (group) {
    case OperatorGroup::kGemm: return "GEMM";
    case OperatorGroup::kNormalization: return "Normalization";
    case OperatorGroup::kActivation: return "Activation";
    case OperatorGroup::kMemory: return "Memory";
    case OperatorGroup::kElemwiseArithmetic: return "ElemwiseArithmetic";
    case OperatorGroup::kLogitComputation: return "LogitComputation";
    case OperatorGroup::kRoiSelection: return "RoiSelection";
    case OperatorGroup::kInterpolation: return "Interpolation";
    case OperatorGroup::kUncategorized: return "Uncategorized";
  }
  return "Uncategorized";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Lower-cased, with spaces, dashes and underscores removed.
std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool has_glob(std::string_view pattern) {
  return pattern.find_first_of("*?[") != std::string_view::npos;
}

}  // namespace

std::optional<OperatorGroup> parse_group(std::string_view name) {
  const std::string key = squash(name);
  for (OperatorGroup g : kAllGroups) {
    if (squash(group_name(g)) == key) return g;
  }
  if (key == "elemwise" || key == "elementwisearithmetic") return OperatorGroup::kElemwiseArithmetic;
  if (key == "roi") return OperatorGroup::kRoiSelection;
  if (key == "logit") return OperatorGroup::kLogitComputation;
  return std::nullopt;
}

std::string normalize_op_name(std::string_view op_name) {
  std::string_view name = op_name;
  if (auto ns = name.rfind("::"); ns != std::string_view::npos) {
    name = name.substr(ns + 2);
    // aten::add.Tensor -> add
    if (auto dot = name.find('.'); dot != std::string_view::npos) name = name.substr(0, dot);
  } else if (auto dot = name.rfind('.'); dot != std::string_view::npos && dot + 1 < name.size()) {
    name = name.substr(dot + 1);
  }
  return lower(name);
}

RuleSet::RuleSet(std::vector<Rule> rules, std::string source)
    : rules_(std::move(rules)), source_(std::move(source)) {
  std::unordered_set<std::string> seen;
  for (Rule& r : rules_) {
    r.pattern = lower(r.pattern);
    if (r.pattern.empty()) throw SchemaError("rules (" + source_ + "): empty pattern");
    if (!seen.insert(r.pattern).second) {
      throw SchemaError("rules (" + source_ + "): duplicate pattern '" + r.pattern + "'");
    }
  }
}

std::optional<std::size_t> RuleSet::match(std::string_view op_name) const {
  const std::string name = normalize_op_name(op_name);
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const std::string& p = rules_[i].pattern;
    if (has_glob(p) ? fnmatch(p.c_str(), name.c_str(), 0) == 0 : p == name) return i;
  }
  return std::nullopt;
}

RuleSet default_rules() {
  using G = OperatorGroup;
  std::vector<Rule> rules;
  auto add = [&rules](G g, std::initializer_list<const char*> patterns) {
    for (const char* p : patterns) rules.push_back(Rule{p, g});
  };
  add(G::kGemm, {"linear", "matmul", "bmm", "baddbmm", "addmm", "mm", "conv1d", "conv2d",
                 "conv3d", "convolution", "_convolution", "gemm"});
  // Specific norms first; "*norm*" is the catch-all for this group.
  add(G::kNormalization, {"frozenbatchnorm2d", "batchnorm2d", "batchnorm1d", "batch_norm",
                          "layernorm", "layer_norm", "native_layer_norm", "rmsnorm", "rms_norm",
                          "llamarmsnorm", "groupnorm", "group_norm", "*norm*"});
  add(G::kActivation, {"relu", "relu_", "relu6", "gelu", "*geluactivation", "silu", "silu_",
                       "sigmoid", "tanh", "hardswish"});
  add(G::kMemory, {"view", "_unsafe_view", "reshape", "permute", "contiguous", "split",
                   "split_with_sizes", "chunk", "expand", "squeeze", "unsqueeze", "cat", "concat",
                   "transpose", "t", "flatten", "getitem", "select", "slice", "clone", "copy_",
                   "empty", "zeros"});
  add(G::kElemwiseArithmetic, {"add", "add_", "iadd", "sub", "rsub", "mul", "mul_", "div",
                               "div_", "true_divide", "truediv", "neg", "pow", "sqrt", "rsqrt"});
  add(G::kLogitComputation, {"softmax", "_softmax", "log_softmax"});
  add(G::kRoiSelection, {"nms", "batched_nms", "roi_align", "roialign", "multiscaleroialign"});
  add(G::kInterpolation, {"interpolate", "upsample", "upsample_*"});
  return RuleSet(std::move(rules), "builtin");
}

RuleSet overlay_rules(const RuleSet& overlay, const RuleSet& base) {
  std::vector<Rule> rules = overlay.rules();
  std::unordered_set<std::string> taken;
  for (const Rule& r : rules) taken.insert(r.pattern);
  for (const Rule& r : base.rules()) {
    if (!taken.contains(r.pattern)) rules.push_back(r);
  }
  std::string source = overlay.rules().empty() ? base.source() : overlay.source() + "+" + base.source();
  return RuleSet(std::move(rules), std::move(source));
}

RuleSet load_rules(const std::string& path) {
  using json_io::Json;
  Json doc = json_io::parse_text(json_io::read_file(path), path);
  if (!doc.is_array()) throw SchemaError(path + ": rules file must be a JSON list");
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string ctx = path + " rule[" + std::to_string(i) + "]";
    std::string pattern = json_io::get_string(doc[i], "pattern", ctx);
    std::string group = json_io::get_string(doc[i], "group", ctx);
    auto g = parse_group(group);
    if (!g) throw SchemaError(ctx + ": unknown group '" + group + "'");
    rules.push_back(Rule{std::move(pattern), *g});
  }
  return RuleSet(std::move(rules), path);
}

OperatorGroup classify(std::string_view op_name, const RuleSet& rules) {
  auto index = rules.match(op_name);
  return index ? rules.rules()[*index].group : OperatorGroup::kUncategorized;
}

RuleSet resolve_rules(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("OPBENCH_RULES"); env != nullptr) path = env;
  }
  RuleSet builtin = default_rules();
  if (path.empty()) return builtin;
  return overlay_rules(load_rules(path), builtin);
}

}  // namespace opbench
