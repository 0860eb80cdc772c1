// Copyright 2026 The vfix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VFIX_ANALYSIS_LINT_HPP_
#define VFIX_ANALYSIS_LINT_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfix/java/ast.hpp"

namespace vfix::analysis {

enum class RuleCategory { ErrorProne, Design, Style, Security, Size };

std::string_view category_name(RuleCategory c);

struct LintThresholds {
  int long_method_lines = 60;
  int long_line_chars = 120;
  int max_nesting_depth = 4;
  int max_parameters = 6;
  int god_class_lines = 500;
};

// A raw finding. `raw_id` may carry case-specific detail after a separator
// (e.g. "UnusedPrivateField:counter"); counting goes through
// normalize_rule_id.
struct Violation {
  std::string raw_id;
  int line = 0;
};

struct RuleContext {
  const java::AstNode* ast = nullptr;  // null when the file failed to parse
  std::vector<std::string_view> lines;
  const LintThresholds* thresholds = nullptr;
};

struct Rule {
  std::string id;
  RuleCategory category = RuleCategory::ErrorProne;
  std::string description;
  std::optional<int> threshold;
  // Text rules also run on files that failed to parse.
  bool text_based = false;
  std::function<void(const RuleContext&, std::vector<Violation>&)> matcher;
};

enum class LintConfiguration { Strict, Style };

// The 20-rule catalog. Strict holds every rule; Style keeps the style and
// size categories.
std::vector<Rule> rule_catalog(LintConfiguration config = LintConfiguration::Strict);

// Strips case-specific detail (identifiers, literals, positions) that follows
// the first ':', '@', '(' or whitespace. Idempotent.
std::string normalize_rule_id(std::string_view raw);

using ViolationCounts = std::map<std::string, int>;

// Per-rule counts for one file version. Every catalog id is present (0 when
// nothing fired). A null `ast` evaluates text rules only. Throws
// ValidationError on an empty catalog.
ViolationCounts run_rules(const java::AstNode* ast, std::string_view text,
                          const std::vector<Rule>& catalog,
                          const LintThresholds& thresholds = {});

// Raw findings before normalization, in catalog order.
std::vector<Violation> collect_violations(const java::AstNode* ast, std::string_view text,
                                          const std::vector<Rule>& catalog,
                                          const LintThresholds& thresholds = {});

}  // namespace vfix::analysis

#endif  // VFIX_ANALYSIS_LINT_HPP_
