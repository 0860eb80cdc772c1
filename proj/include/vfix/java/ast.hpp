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

#ifndef VFIX_JAVA_AST_HPP_
#define VFIX_JAVA_AST_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace vfix::java {

enum class NodeKind : std::uint8_t {
  CompilationUnit,
  PackageDecl,
  ImportDecl,
  ClassDecl,
  InterfaceDecl,
  EnumDecl,
  AnonymousClass,
  FieldDecl,
  MethodDecl,
  ConstructorDecl,
  Initializer,
  Parameter,
  Type,
  VarDeclarator,
  Block,
  LocalVarDecl,
  If,
  While,
  DoWhile,
  For,
  ForEach,
  Switch,
  Case,
  Default,
  Try,
  Catch,
  Finally,
  Return,
  Break,
  Continue,
  Throw,
  ExprStatement,
  EmptyStatement,
  Synchronized,
  Assert,
  Call,
  FieldAccess,
  ArrayAccess,
  Identifier,
  Literal,
  BinaryOp,
  UnaryOp,
  PostfixOp,
  Assign,
  Conditional,
  Cast,
  InstanceOf,
  New,
  NewArray,
  ArrayInit,
  Lambda,
  MethodRef,
  This,
  Super,
  ClassLiteral,
};

std::string_view kind_name(NodeKind kind);

// Modifier bit set carried on declarations.
enum Modifier : std::uint32_t {
  kPublic = 1u << 0,
  kProtected = 1u << 1,
  kPrivate = 1u << 2,
  kStatic = 1u << 3,
  kFinal = 1u << 4,
  kAbstract = 1u << 5,
  kNative = 1u << 6,
  kSynchronized = 1u << 7,
  kTransient = 1u << 8,
  kVolatile = 1u << 9,
  kStrictfp = 1u << 10,
  kDefault = 1u << 11,
};

struct Span {
  int start_line = 0;
  int end_line = 0;
  bool operator==(const Span&) const = default;
};

// One syntax tree node. `text` holds the identifying token for the node:
// names for declarations and identifiers, the operator for operator nodes,
// the literal spelling for literals and the raw type name for types.
//
// Child layout per kind (optional parts simply absent):
//   ClassDecl/InterfaceDecl/EnumDecl: members; `supertypes` lists extends
//     first (when `has_extends`), then implements names.
//   MethodDecl: Type (return), Parameter*, Block? ; ConstructorDecl: Parameter*, Block
//   FieldDecl/LocalVarDecl: Type, VarDeclarator+ ; VarDeclarator: initializer?
//   If: cond, then, else? ; While: cond, body ; DoWhile: body, cond
//   For: init-list (Block holding statements), cond?, update-list (Block), body;
//     the cond slot is an EmptyStatement when omitted.
//   ForEach: Type, VarDeclarator, iterable, body
//   Switch: selector, (Case|Default)* ; Case: label expr, statements*
//   Try: resource decls*, Block, Catch*, Finally? ; Catch: Parameter, Block
//   Call: receiver?, args* (`has_receiver` says whether child 0 is the receiver)
//   FieldAccess: target ; ArrayAccess: array, index
//   New: Type, args*, AnonymousClass?
struct AstNode {
  NodeKind kind = NodeKind::CompilationUnit;
  std::string text;
  Span span;
  std::uint32_t modifiers = 0;
  bool has_receiver = false;
  bool has_extends = false;
  std::vector<std::string> supertypes;
  std::vector<std::unique_ptr<AstNode>> children;

  AstNode() = default;
  AstNode(NodeKind k, std::string t, Span s) : kind(k), text(std::move(t)), span(s) {}

  AstNode& add(std::unique_ptr<AstNode> child) {
    children.push_back(std::move(child));
    return *children.back();
  }

  const AstNode& child(std::size_t i) const { return *children.at(i); }
  std::size_t size() const { return children.size(); }
  bool is(NodeKind k) const { return kind == k; }
};

// Pre-order traversal. Returning false from `fn` skips the node's subtree.
void visit(const AstNode& node, const std::function<bool(const AstNode&)>& fn);

// Pre-order traversal with the parent chain (innermost last).
void visit_with_parents(
    const AstNode& node,
    const std::function<bool(const AstNode&, const std::vector<const AstNode*>&)>& fn);

std::size_t count_nodes(const AstNode& node);

// Node kinds in pre-order.
std::vector<NodeKind> kind_sequence(const AstNode& node);

bool is_statement(NodeKind kind);
bool is_type_decl(NodeKind kind);
bool is_string_literal(const AstNode& node);
bool is_number_literal(const AstNode& node);

// Indented one-node-per-line dump, handy in test failures.
std::string dump(const AstNode& node);

}  // namespace vfix::java

#endif  // VFIX_JAVA_AST_HPP_
