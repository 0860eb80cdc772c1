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

#include "vfix/analysis/lint.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>

#include "vfix/common.hpp"

namespace vfix::analysis {

using java::AstNode;
using java::NodeKind;

namespace {

using Parents = std::vector<const AstNode*>;

int line_span(const AstNode& n) { return n.span.end_line - n.span.start_line + 1; }

bool is_empty_body(const AstNode& n) {
  return (n.kind == NodeKind::Block && n.children.empty()) || n.kind == NodeKind::EmptyStatement;
}

bool is_control(NodeKind k) {
  switch (k) {
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::DoWhile:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::Switch:
    case NodeKind::Try:
    case NodeKind::Synchronized:
      return true;
    default:
      return false;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool looks_secret(std::string_view name) {
  static const char* kMarkers[] = {"password", "passwd", "pwd", "secret", "token",
                                   "apikey",   "api_key", "credential"};
  std::string l = lower(name);
  for (const char* m : kMarkers) {
    if (l.find(m) != std::string::npos) return true;
  }
  return false;
}

// Numeric value of an integer or floating literal spelling, ignoring
// underscores and type suffixes. Returns nullopt on anything unusual.
std::optional<double> literal_value(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != '_') s.push_back(c);
  }
  while (!s.empty() && std::strchr("lLfFdD", s.back()) && !(s.size() > 2 && s[1] == 'x')) {
    s.pop_back();
  }
  try {
    std::size_t used = 0;
    double v = 0;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
      v = static_cast<double>(std::stoull(s.substr(2), &used, 16));
      used += 2;
    } else if (s.size() > 2 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
      v = static_cast<double>(std::stoull(s.substr(2), &used, 2));
      used += 2;
    } else {
      v = std::stod(s, &used);
    }
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

// Visits every node matching `kind` with its parent chain.
template <typename Fn>
void for_each_kind(const AstNode& root, NodeKind kind, Fn&& fn) {
  java::visit_with_parents(root, [&](const AstNode& n, const Parents& parents) {
    if (n.kind == kind) fn(n, parents);
    return true;
  });
}

void add(std::vector<Violation>& out, std::string id, const AstNode& at) {
  out.push_back({std::move(id), at.span.start_line});
}

// ---- matchers ----

void empty_catch(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Catch, [&](const AstNode& n, const Parents&) {
    if (n.child(1).children.empty()) add(out, "EmptyCatchBlock", n);
  });
}

void broad_catch(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Catch, [&](const AstNode& n, const Parents&) {
    const std::string& types = n.child(0).child(0).text;
    std::size_t start = 0;
    while (start <= types.size()) {
      std::size_t bar = types.find('|', start);
      std::string t = types.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      std::size_t dot = t.rfind('.');
      if (dot != std::string::npos) t = t.substr(dot + 1);
      if (t == "Exception" || t == "Throwable") {
        add(out, "CatchBroadException:" + t, n);
        return;
      }
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
  });
}

void empty_if(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::If, [&](const AstNode& n, const Parents&) {
    if (is_empty_body(n.child(1))) add(out, "EmptyIf", n);
  });
}

void empty_while(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::While, [&](const AstNode& n, const Parents&) {
    if (is_empty_body(n.child(1))) add(out, "EmptyWhile", n);
  });
}

void missing_braces_if(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::If, [&](const AstNode& n, const Parents&) {
    bool bad = n.child(1).kind != NodeKind::Block;
    if (n.size() > 2) {
      NodeKind e = n.child(2).kind;
      bad |= e != NodeKind::Block && e != NodeKind::If;
    }
    if (bad) add(out, "MissingBracesIf", n);
  });
}

void missing_switch_default(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Switch, [&](const AstNode& n, const Parents&) {
    bool has_default = std::any_of(n.children.begin(), n.children.end(),
                                   [](const auto& c) { return c->kind == NodeKind::Default; });
    if (!has_default) add(out, "MissingSwitchDefault", n);
  });
}

void magic_number(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Literal, [&](const AstNode& n, const Parents& parents) {
    if (!java::is_number_literal(n)) return;
    for (const AstNode* p : parents) {
      if (p->kind == NodeKind::VarDeclarator || p->kind == NodeKind::EnumDecl) return;
    }
    auto v = literal_value(n.text);
    if (v && (*v == 0.0 || *v == 1.0 || *v == 2.0)) return;
    add(out, "MagicNumber:" + n.text, n);
  });
}

void long_method(const RuleContext& ctx, std::vector<Violation>& out) {
  const int limit = ctx.thresholds->long_method_lines;
  java::visit(*ctx.ast, [&](const AstNode& n) {
    if ((n.kind == NodeKind::MethodDecl || n.kind == NodeKind::ConstructorDecl) &&
        line_span(n) > limit) {
      add(out, "LongMethod:" + n.text, n);
    }
    return true;
  });
}

void long_line(const RuleContext& ctx, std::vector<Violation>& out) {
  const auto limit = static_cast<std::size_t>(ctx.thresholds->long_line_chars);
  for (std::size_t i = 0; i < ctx.lines.size(); ++i) {
    if (ctx.lines[i].size() > limit) out.push_back({"LongLine@" + std::to_string(i + 1), static_cast<int>(i + 1)});
  }
}

void deep_nesting(const RuleContext& ctx, std::vector<Violation>& out) {
  const int limit = ctx.thresholds->max_nesting_depth;
  java::visit_with_parents(*ctx.ast, [&](const AstNode& n, const Parents& parents) {
    if (!is_control(n.kind)) return true;
    int depth = 1;
    for (auto it = parents.rbegin(); it != parents.rend(); ++it) {
      const AstNode* p = *it;
      if (java::is_type_decl(p->kind) || p->kind == NodeKind::MethodDecl ||
          p->kind == NodeKind::ConstructorDecl) {
        break;
      }
      depth += is_control(p->kind);
    }
    if (depth > limit) add(out, "DeepNesting", n);
    return true;
  });
}

void too_many_parameters(const RuleContext& ctx, std::vector<Violation>& out) {
  const auto limit = static_cast<std::size_t>(ctx.thresholds->max_parameters);
  java::visit(*ctx.ast, [&](const AstNode& n) {
    if (n.kind == NodeKind::MethodDecl || n.kind == NodeKind::ConstructorDecl) {
      std::size_t params = static_cast<std::size_t>(std::count_if(
          n.children.begin(), n.children.end(),
          [](const auto& c) { return c->kind == NodeKind::Parameter; }));
      if (params > limit) add(out, "TooManyParameters:" + n.text, n);
    }
    return true;
  });
}

void system_out_print(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Call, [&](const AstNode& n, const Parents&) {
    if (!n.has_receiver) return;
    if (n.text != "print" && n.text != "println" && n.text != "printf") return;
    const AstNode& recv = n.child(0);
    if (recv.kind == NodeKind::FieldAccess && (recv.text == "out" || recv.text == "err") &&
        recv.child(0).kind == NodeKind::Identifier && recv.child(0).text == "System") {
      add(out, "SystemOutPrint", n);
    }
  });
}

void print_stack_trace(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Call, [&](const AstNode& n, const Parents&) {
    if (n.has_receiver && n.text == "printStackTrace" && n.size() == 1) {
      add(out, "PrintStackTrace", n);
    }
  });
}

void string_equals_operator(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::BinaryOp, [&](const AstNode& n, const Parents&) {
    if ((n.text == "==" || n.text == "!=") &&
        (java::is_string_literal(n.child(0)) || java::is_string_literal(n.child(1)))) {
      add(out, "StringEqualsOperator", n);
    }
  });
}

void hardcoded_secret(const RuleContext& ctx, std::vector<Violation>& out) {
  java::visit(*ctx.ast, [&](const AstNode& n) {
    if (n.kind == NodeKind::VarDeclarator && !n.children.empty() && looks_secret(n.text) &&
        java::is_string_literal(n.child(0))) {
      add(out, "HardcodedSecretString:" + n.text, n);
    } else if (n.kind == NodeKind::Assign && n.text == "=" && java::is_string_literal(n.child(1))) {
      const AstNode& lhs = n.child(0);
      if ((lhs.kind == NodeKind::Identifier || lhs.kind == NodeKind::FieldAccess) &&
          looks_secret(lhs.text)) {
        add(out, "HardcodedSecretString:" + lhs.text, n);
      }
    }
    return true;
  });
}

void empty_finally(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Finally, [&](const AstNode& n, const Parents&) {
    if (n.child(0).children.empty()) add(out, "EmptyFinally", n);
  });
}

void return_in_finally(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Return, [&](const AstNode& n, const Parents& parents) {
    for (auto it = parents.rbegin(); it != parents.rend(); ++it) {
      if ((*it)->kind == NodeKind::Finally) {
        add(out, "ReturnInFinally", n);
        return;
      }
      if (java::is_type_decl((*it)->kind) || (*it)->kind == NodeKind::MethodDecl) return;
    }
  });
}

void collect_reads(const AstNode& n, bool is_write_target, std::set<std::string>& reads) {
  if (!is_write_target) {
    if (n.kind == NodeKind::Identifier) reads.insert(n.text);
    if (n.kind == NodeKind::FieldAccess && n.child(0).kind == NodeKind::This) reads.insert(n.text);
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    bool write = n.kind == NodeKind::Assign && n.text == "=" && i == 0;
    collect_reads(n.child(i), write, reads);
  }
}

void unused_private_field(const RuleContext& ctx, std::vector<Violation>& out) {
  java::visit(*ctx.ast, [&](const AstNode& cls) {
    if (!java::is_type_decl(cls.kind)) return true;
    std::set<std::string> reads;
    collect_reads(cls, false, reads);
    for (const auto& m : cls.children) {
      if (m->kind != NodeKind::FieldDecl || !(m->modifiers & java::kPrivate)) continue;
      for (std::size_t i = 1; i < m->size(); ++i) {
        const AstNode& d = m->child(i);
        if (!reads.count(d.text)) add(out, "UnusedPrivateField:" + d.text, d);
      }
    }
    return true;
  });
}

bool ends_with_jump(const AstNode& stmt) {
  switch (stmt.kind) {
    case NodeKind::Break:
    case NodeKind::Return:
    case NodeKind::Throw:
    case NodeKind::Continue:
      return true;
    case NodeKind::Block:
      return !stmt.children.empty() && ends_with_jump(*stmt.children.back());
    default:
      return false;
  }
}

void switch_fallthrough(const RuleContext& ctx, std::vector<Violation>& out) {
  for_each_kind(*ctx.ast, NodeKind::Switch, [&](const AstNode& n, const Parents&) {
    for (std::size_t i = 1; i + 1 < n.size(); ++i) {
      const AstNode& label = n.child(i);
      std::size_t first = label.kind == NodeKind::Case ? 1 : 0;
      if (label.size() <= first) continue;
      if (!ends_with_jump(*label.children.back())) add(out, "SwitchFallthrough", label);
    }
  });
}

void god_class(const RuleContext& ctx, std::vector<Violation>& out) {
  const int limit = ctx.thresholds->god_class_lines;
  if (!ctx.ast) {
    if (static_cast<int>(ctx.lines.size()) > limit) out.push_back({"GodClass", 1});
    return;
  }
  java::visit(*ctx.ast, [&](const AstNode& n) {
    if ((n.kind == NodeKind::ClassDecl || n.kind == NodeKind::EnumDecl) && line_span(n) > limit) {
      add(out, "GodClass:" + n.text, n);
    }
    return true;
  });
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

}  // namespace

std::string_view category_name(RuleCategory c) {
  switch (c) {
    case RuleCategory::ErrorProne:
      return "error_prone";
    case RuleCategory::Design:
      return "design";
    case RuleCategory::Style:
      return "style";
    case RuleCategory::Security:
      return "security";
    case RuleCategory::Size:
      return "size";
  }
  return "unknown";
}

std::vector<Rule> rule_catalog(LintConfiguration config) {
  const LintThresholds t;
  using C = RuleCategory;
  std::vector<Rule> all = {
      {"EmptyCatchBlock", C::ErrorProne, "catch block with no statements", {}, false, empty_catch},
      {"CatchBroadException", C::ErrorProne, "catches Exception or Throwable", {}, false, broad_catch},
      {"EmptyIf", C::ErrorProne, "if statement with an empty then-branch", {}, false, empty_if},
      {"EmptyWhile", C::ErrorProne, "while loop with an empty body", {}, false, empty_while},
      {"MissingBracesIf", C::Style, "if/else branch without braces", {}, false, missing_braces_if},
      {"MissingSwitchDefault", C::Design, "switch without a default label", {}, false,
       missing_switch_default},
      {"MagicNumber", C::Style,
       "numeric literal outside a declaration initializer (0, 1, 2 and -1 allowed)", {}, false,
       magic_number},
      {"LongMethod", C::Size, "method or constructor longer than the line threshold",
       t.long_method_lines, false, long_method},
      {"LongLine", C::Size, "source line longer than the character threshold", t.long_line_chars,
       true, long_line},
      {"DeepNesting", C::Design, "control statement nested deeper than the threshold",
       t.max_nesting_depth, false, deep_nesting},
      {"TooManyParameters", C::Size, "method with more parameters than the threshold",
       t.max_parameters, false, too_many_parameters},
      {"SystemOutPrint", C::Style, "printing through System.out or System.err", {}, false,
       system_out_print},
      {"PrintStackTrace", C::ErrorProne, "call to printStackTrace()", {}, false, print_stack_trace},
      {"StringEqualsOperator", C::ErrorProne, "== or != against a string literal", {}, false,
       string_equals_operator},
      {"HardcodedSecretString", C::Security,
       "string literal assigned to a password/secret/token-like name", {}, false, hardcoded_secret},
      {"EmptyFinally", C::ErrorProne, "finally block with no statements", {}, false, empty_finally},
      {"ReturnInFinally", C::ErrorProne, "return statement inside a finally block", {}, false,
       return_in_finally},
      {"UnusedPrivateField", C::Design, "private field that is never read", {}, false,
       unused_private_field},
      {"SwitchFallthrough", C::ErrorProne,
       "non-empty case that falls through to the next label", {}, false, switch_fallthrough},
      {"GodClass", C::Size, "class longer than the line threshold", t.god_class_lines, true,
       god_class},
  };
  if (config == LintConfiguration::Strict) return all;
  std::vector<Rule> style;
  for (auto& r : all) {
    if (r.category == C::Style || r.category == C::Size) style.push_back(std::move(r));
  }
  return style;
}

std::string normalize_rule_id(std::string_view raw) {
  std::size_t start = 0;
  while (start < raw.size() && std::isspace(static_cast<unsigned char>(raw[start]))) ++start;
  std::size_t end = start;
  while (end < raw.size() && raw[end] != ':' && raw[end] != '@' && raw[end] != '(' &&
         !std::isspace(static_cast<unsigned char>(raw[end]))) {
    ++end;
  }
  return std::string(raw.substr(start, end - start));
}

std::vector<Violation> collect_violations(const AstNode* ast, std::string_view text,
                                          const std::vector<Rule>& catalog,
                                          const LintThresholds& thresholds) {
  if (catalog.empty()) throw ValidationError("lint: empty rule catalog");
  RuleContext ctx{ast, split_lines(text), &thresholds};
  std::vector<Violation> out;
  for (const auto& rule : catalog) {
    if (!ast && !rule.text_based) continue;
    rule.matcher(ctx, out);
  }
  return out;
}

ViolationCounts run_rules(const AstNode* ast, std::string_view text,
                          const std::vector<Rule>& catalog, const LintThresholds& thresholds) {
  ViolationCounts counts;
  for (const auto& rule : catalog) counts[rule.id] = 0;
  for (const auto& v : collect_violations(ast, text, catalog, thresholds)) {
    auto it = counts.find(normalize_rule_id(v.raw_id));
    if (it != counts.end()) ++it->second;
  }
  return counts;
}

}  // namespace vfix::analysis
