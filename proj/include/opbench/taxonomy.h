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

#ifndef OPBENCH_TAXONOMY_H_
#define OPBENCH_TAXONOMY_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opbench {

// Functional operator groups. Enumeration order is the canonical row order
// for every report and the tie-break order for rankings.
enum class OperatorGroup {
  kGemm,
  kNormalization,
  kActivation,
  kMemory,
  kElemwiseArithmetic,
  kLogitComputation,
  kRoiSelection,
  kInterpolation,
  kUncategorized,
};

inline constexpr std::size_t kNumGroups = 9;

inline constexpr std::array<OperatorGroup, kNumGroups> kAllGroups = {
    OperatorGroup::kGemm,
    OperatorGroup::kNormalization,
    OperatorGroup::kActivation,
    OperatorGroup::kMemory,
    OperatorGroup::kElemwiseArithmetic,
    OperatorGroup::kLogitComputation,
    OperatorGroup::kRoiSelection,
    OperatorGroup::kInterpolation,
    OperatorGroup::kUncategorized,
};

std::string_view group_name(OperatorGroup group);
// Inverse of group_name; also accepts a few spelled-out aliases
// ("Elem-wise Arithmetic", "RoI Selection", "Logit Computation").
std::optional<OperatorGroup> parse_group(std::string_view name);

constexpr std::size_t group_index(OperatorGroup group) {
  return static_cast<std::size_t>(group);
}

constexpr bool is_gemm(OperatorGroup group) {
  return group == OperatorGroup::kGemm;
}

struct Rule {
  std::string pattern;  // lower-case; '*', '?' and '[...]' act as globs
  OperatorGroup group;

  bool operator==(const Rule&) const = default;
};

class RuleSet {
 public:
  RuleSet() = default;
  // Throws SchemaError on duplicate patterns.
  RuleSet(std::vector<Rule> rules, std::string source);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::string& source() const { return source_; }

  // Index of the first rule matching `op_name` after name normalization.
  std::optional<std::size_t> match(std::string_view op_name) const;

  bool operator==(const RuleSet&) const = default;

 private:
  std::vector<Rule> rules_;
  std::string source_;
};

// Strips namespaces and overload suffixes and lower-cases:
//   "torch.nn.modules.activation.GELU" -> "gelu"
//   "aten::add.Tensor"                 -> "add"
std::string normalize_op_name(std::string_view op_name);

RuleSet default_rules();

// `overlay` rules are evaluated before the builtin ones. A builtin rule whose
// pattern the overlay redefines is dropped.
RuleSet overlay_rules(const RuleSet& overlay, const RuleSet& base);

// Reads a JSON list [{pattern, group}].
RuleSet load_rules(const std::string& path);

// Total: unmatched names yield kUncategorized.
OperatorGroup classify(std::string_view op_name, const RuleSet& rules);

// Builtin rules overlaid with the file named by OPBENCH_RULES, or by
// `explicit_path` when non-empty (flag beats environment).
RuleSet resolve_rules(const std::string& explicit_path);

}  // namespace opbench

#endif  // OPBENCH_TAXONOMY_H_
