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

#include "vfix/java/ast.hpp"

#include <array>
#include <sstream>

namespace vfix::java {

namespace {

constexpr std::array kKindNames = {
    "CompilationUnit", "PackageDecl",   "ImportDecl",     "ClassDecl",     "InterfaceDecl",
    "EnumDecl",        "AnonymousClass", "FieldDecl",     "MethodDecl",    "ConstructorDecl",
    "Initializer",     "Parameter",     "Type",           "VarDeclarator", "Block",
    "LocalVarDecl",    "If",            "While",          "DoWhile",       "For",
    "ForEach",         "Switch",        "Case",           "Default",       "Try",
    "Catch",           "Finally",       "Return",         "Break",         "Continue",
    "Throw",           "ExprStatement", "EmptyStatement", "Synchronized",  "Assert",
    "Call",            "FieldAccess",   "ArrayAccess",    "Identifier",    "Literal",
    "BinaryOp",        "UnaryOp",       "PostfixOp",      "Assign",        "Conditional",
    "Cast",            "InstanceOf",    "New",            "NewArray",      "ArrayInit",
    "Lambda",          "MethodRef",     "This",           "Super",         "ClassLiteral",
};
static_assert(kKindNames.size() == static_cast<std::size_t>(NodeKind::ClassLiteral) + 1);

void visit_impl(const AstNode& node, std::vector<const AstNode*>& parents,
                const std::function<bool(const AstNode&, const std::vector<const AstNode*>&)>& fn) {
  if (!fn(node, parents)) return;
  parents.push_back(&node);
  for (const auto& c : node.children) visit_impl(*c, parents, fn);
  parents.pop_back();
}

void dump_impl(const AstNode& node, int depth, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << kind_name(node.kind);
  if (!node.text.empty()) out << " '" << node.text << "'";
  out << " [" << node.span.start_line << "-" << node.span.end_line << "]\n";
  for (const auto& c : node.children) dump_impl(*c, depth + 1, out);
}

}  // namespace

std::string_view kind_name(NodeKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

void visit(const AstNode& node, const std::function<bool(const AstNode&)>& fn) {
  if (!fn(node)) return;
  for (const auto& c : node.children) visit(*c, fn);
}

void visit_with_parents(
    const AstNode& node,
    const std::function<bool(const AstNode&, const std::vector<const AstNode*>&)>& fn) {
  std::vector<const AstNode*> parents;
  visit_impl(node, parents, fn);
}

std::size_t count_nodes(const AstNode& node) {
  std::size_t n = 1;
  for (const auto& c : node.children) n += count_nodes(*c);
  return n;
}

std::vector<NodeKind> kind_sequence(const AstNode& node) {
  std::vector<NodeKind> out;
  visit(node, [&](const AstNode& n) {
    out.push_back(n.kind);
    return true;
  });
  return out;
}

bool is_statement(NodeKind kind) {
  switch (kind) {
    case NodeKind::Block:
    case NodeKind::LocalVarDecl:
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::DoWhile:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::Switch:
    case NodeKind::Try:
    case NodeKind::Return:
    case NodeKind::Break:
    case NodeKind::Continue:
    case NodeKind::Throw:
    case NodeKind::ExprStatement:
    case NodeKind::EmptyStatement:
    case NodeKind::Synchronized:
    case NodeKind::Assert:
      return true;
    default:
      return false;
  }
}

bool is_type_decl(NodeKind kind) {
  return kind == NodeKind::ClassDecl || kind == NodeKind::InterfaceDecl ||
         kind == NodeKind::EnumDecl || kind == NodeKind::AnonymousClass;
}

bool is_string_literal(const AstNode& node) {
  return node.kind == NodeKind::Literal && !node.text.empty() && node.text.front() == '"';
}

bool is_number_literal(const AstNode& node) {
  if (node.kind != NodeKind::Literal || node.text.empty()) return false;
  char c = node.text.front();
  return (c >= '0' && c <= '9') || c == '.';
}

std::string dump(const AstNode& node) {
  std::ostringstream out;
  dump_impl(node, 0, out);
  return out.str();
}

}  // namespace vfix::java
