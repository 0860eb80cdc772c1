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

#include "vfix/analysis/class_metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vfix::analysis {

using java::AstNode;
using java::NodeKind;

namespace {

enum Metric {
  kWmc, kDit, kCbo, kRfc, kLcom, kLoc, kMethods, kFields, kStaticMethods, kReturns, kLoops,
  kComparisons, kTries, kStrings, kNumbers, kMathOps, kVariables, kMaxNesting, kMetricCount
};

bool is_decision(const AstNode& n) {
  switch (n.kind) {
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::DoWhile:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::Case:
    case NodeKind::Catch:
    case NodeKind::Conditional:
      return true;
    case NodeKind::BinaryOp:
      return n.text == "&&" || n.text == "||";
    default:
      return false;
  }
}

bool is_nesting(NodeKind k) {
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

bool is_method(const AstNode& n) {
  return n.kind == NodeKind::MethodDecl || n.kind == NodeKind::ConstructorDecl;
}

// Visits the subtree without descending into nested type declarations.
template <typename Fn>
void visit_own(const AstNode& n, Fn&& fn) {
  fn(n);
  for (const auto& c : n.children) {
    if (java::is_type_decl(c->kind)) continue;
    visit_own(*c, fn);
  }
}

const std::set<std::string>& jdk_types() {
  static const std::set<std::string> names = {
      "boolean", "byte", "char", "short", "int", "long", "float", "double", "void", "var",
      "Object", "String", "Integer", "Long", "Double", "Float", "Short", "Byte", "Character",
      "Boolean", "Number", "Math", "System", "StringBuilder", "StringBuffer", "CharSequence",
      "Void", "Class", "Thread", "Runnable", "Comparable", "Comparator", "Iterable", "Iterator",
      "Exception", "RuntimeException", "Throwable", "Error", "IllegalArgumentException",
      "IllegalStateException", "NullPointerException", "IndexOutOfBoundsException",
      "UnsupportedOperationException", "IOException", "List", "ArrayList", "LinkedList", "Map",
      "HashMap", "TreeMap", "LinkedHashMap", "Set", "HashSet", "TreeSet", "LinkedHashSet",
      "Collection", "Collections", "Arrays", "Optional", "Objects"};
  return names;
}

std::string base_type(std::string t) {
  while (t.size() >= 2 && t.compare(t.size() - 2, 2, "[]") == 0) t.resize(t.size() - 2);
  return t;
}

struct ClassInfo {
  const AstNode* node;
  std::string name;
};

class Extractor {
 public:
  Extractor(const AstNode& root, std::string file) : file_(std::move(file)) { collect(root); }

  std::vector<ClassMetricsRow> rows() {
    std::vector<ClassMetricsRow> out;
    for (const auto& c : classes_) out.push_back(row(c));
    return out;
  }

 private:
  void collect(const AstNode& n) {
    if (java::is_type_decl(n.kind)) {
      std::string name = n.kind == NodeKind::AnonymousClass
                             ? "<anonymous#" + std::to_string(++anonymous_) + ">"
                             : n.text;
      classes_.push_back({&n, name});
      if (n.kind != NodeKind::AnonymousClass) by_name_.emplace(n.text, &n);
    }
    for (const auto& c : n.children) collect(*c);
  }

  int dit(const AstNode& cls, std::set<const AstNode*>& seen) const {
    if (!seen.insert(&cls).second) return 1;
    if (cls.kind != NodeKind::ClassDecl || !cls.has_extends || cls.supertypes.empty()) return 1;
    std::string super = cls.supertypes.front();
    auto dot = super.rfind('.');
    if (dot != std::string::npos) super = super.substr(dot + 1);
    auto it = by_name_.find(super);
    if (it == by_name_.end() || it->second->kind != NodeKind::ClassDecl) return 1;
    return 1 + dit(*it->second, seen);
  }

  static int max_nesting(const AstNode& n, int depth) {
    int here = depth + (is_nesting(n.kind) ? 1 : 0);
    int best = here;
    for (const auto& c : n.children) {
      if (java::is_type_decl(c->kind)) continue;
      best = std::max(best, max_nesting(*c, here));
    }
    return best;
  }

  ClassMetricsRow row(const ClassInfo& info) const {
    const AstNode& cls = *info.node;
    std::vector<double> m(kMetricCount, 0.0);

    std::set<std::string> field_names;
    std::vector<const AstNode*> methods;
    for (const auto& member : cls.children) {
      if (member->kind == NodeKind::FieldDecl) {
        for (std::size_t i = 1; i < member->size(); ++i) field_names.insert(member->child(i).text);
        m[kFields] += static_cast<double>(member->size() - 1);
      } else if (is_method(*member)) {
        methods.push_back(member.get());
        if (member->modifiers & java::kStatic) m[kStaticMethods] += 1;
      }
    }
    m[kMethods] = static_cast<double>(methods.size());

    std::set<std::string> referenced;
    std::set<std::string> invoked;
    for (const auto& s : cls.supertypes) referenced.insert(s);
    visit_own(cls, [&](const AstNode& n) {
      switch (n.kind) {
        case NodeKind::Type: {
          std::string t = base_type(n.text);
          std::size_t start = 0;
          // Multi-catch types arrive joined by '|'.
          while (start <= t.size()) {
            std::size_t bar = t.find('|', start);
            referenced.insert(t.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
            if (bar == std::string::npos) break;
            start = bar + 1;
          }
          break;
        }
        case NodeKind::Call:
          invoked.insert(n.text);
          break;
        case NodeKind::Return:
          m[kReturns] += 1;
          break;
        case NodeKind::While:
        case NodeKind::DoWhile:
        case NodeKind::For:
        case NodeKind::ForEach:
          m[kLoops] += 1;
          break;
        case NodeKind::Try:
          m[kTries] += 1;
          break;
        case NodeKind::Literal:
          if (java::is_string_literal(n)) m[kStrings] += 1;
          if (java::is_number_literal(n)) m[kNumbers] += 1;
          break;
        case NodeKind::BinaryOp:
          if (n.text == "==" || n.text == "!=" || n.text == "<" || n.text == ">" ||
              n.text == "<=" || n.text == ">=") {
            m[kComparisons] += 1;
          }
          if (n.text == "+" || n.text == "-" || n.text == "*" || n.text == "/" || n.text == "%") {
            m[kMathOps] += 1;
          }
          break;
        case NodeKind::Assign:
          if (n.text == "+=" || n.text == "-=" || n.text == "*=" || n.text == "/=" ||
              n.text == "%=") {
            m[kMathOps] += 1;
          }
          break;
        case NodeKind::LocalVarDecl:
          m[kVariables] += static_cast<double>(n.size() - 1);
          break;
        default:
          break;
      }
      if (n.kind == NodeKind::ForEach) m[kVariables] += 1;
    });

    for (const auto& t : referenced) {
      if (t.empty() || t == cls.text || jdk_types().count(t)) continue;
      if (t.rfind("java.", 0) == 0 || t.rfind("javax.", 0) == 0) continue;
      m[kCbo] += 1;
    }
    m[kRfc] = static_cast<double>(methods.size() + invoked.size());

    std::vector<std::set<std::string>> uses;
    for (const AstNode* method : methods) {
      m[kWmc] += cyclomatic_complexity(*method);
      m[kMaxNesting] = std::max(m[kMaxNesting], static_cast<double>(max_nesting(*method, 0)));
      if (method->kind != NodeKind::MethodDecl) continue;
      std::set<std::string> used;
      visit_own(*method, [&](const AstNode& n) {
        if (n.kind == NodeKind::Identifier && field_names.count(n.text)) used.insert(n.text);
        if (n.kind == NodeKind::FieldAccess && n.child(0).kind == NodeKind::This &&
            field_names.count(n.text)) {
          used.insert(n.text);
        }
      });
      uses.push_back(std::move(used));
    }
    for (std::size_t i = 0; i < uses.size(); ++i) {
      for (std::size_t j = i + 1; j < uses.size(); ++j) {
        bool shared = std::any_of(uses[i].begin(), uses[i].end(),
                                  [&](const std::string& f) { return uses[j].count(f) > 0; });
        if (!shared) m[kLcom] += 1;
      }
    }

    std::set<const AstNode*> seen;
    m[kDit] = dit(cls, seen);
    m[kLoc] = std::max(1, cls.span.end_line - cls.span.start_line + 1);

    ClassType type = cls.kind == NodeKind::InterfaceDecl   ? ClassType::Interface
                     : cls.kind == NodeKind::AnonymousClass ? ClassType::Anonymous
                                                            : ClassType::Class;
    return {file_, info.name, type, std::move(m)};
  }

  std::string file_;
  std::vector<ClassInfo> classes_;
  std::multimap<std::string, const AstNode*> by_name_;
  int anonymous_ = 0;
};

}  // namespace

std::string_view class_type_name(ClassType t) {
  switch (t) {
    case ClassType::Class:
      return "class";
    case ClassType::Interface:
      return "interface";
    case ClassType::Anonymous:
      return "anonymous";
  }
  return "class";
}

const std::vector<std::string>& class_metric_names() {
  static const std::vector<std::string> names = {
      "wmc",          "dit",          "cbo",
      "rfc",          "lcom",         "loc",
      "method_count", "field_count",  "static_method_count",
      "return_count", "loop_count",   "comparison_count",
      "try_count",    "string_literal_count", "number_literal_count",
      "math_op_count", "variable_count", "max_nesting"};
  return names;
}

int cyclomatic_complexity(const AstNode& method) {
  int decisions = 0;
  visit_own(method, [&](const AstNode& n) { decisions += is_decision(n) ? 1 : 0; });
  return decisions + 1;
}

std::vector<ClassMetricsRow> class_metrics(const AstNode& root, const std::string& file) {
  return Extractor(root, file).rows();
}

FeatureVector file_metrics_vector(const std::vector<ClassMetricsRow>& rows) {
  FeatureVector out = FeatureVector::zeros(class_metric_names());
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.metrics.size(); ++i) out.values[i] += r.metrics[i];
  }
  return out;
}

}  // namespace vfix::analysis
