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

#include "vfix/code_graph.hpp"

#include <set>
#include <sstream>

#include "vfix/common.hpp"

namespace vfix {

using java::AstNode;
using java::NodeKind;

void CodeGraph::validate() const {
  if (node_labels.size() != node_count) {
    throw ValidationError("code graph: label count does not match node count");
  }
  for (const auto& [from, to] : edges) {
    if (from >= node_count || to >= node_count) {
      throw ValidationError("code graph: edge index out of range");
    }
    if (kind == GraphKind::Ast && from == to) {
      throw ValidationError("code graph: self-loop in AST graph");
    }
  }
}

namespace {

std::size_t add_subtree(CodeGraph& g, const AstNode& node) {
  std::size_t id = g.add_node(std::string(java::kind_name(node.kind)));
  for (const auto& c : node.children) {
    std::size_t child = add_subtree(g, *c);
    g.add_edge(id, child);
  }
  return id;
}

bool is_true_literal(const AstNode& n) { return n.kind == NodeKind::Literal && n.text == "true"; }

class CfgBuilder {
 public:
  CodeGraph run(const AstNode& method) {
    g_.kind = GraphKind::Cfg;
    g_.add_node("ENTRY");
    g_.add_node("EXIT");
    const AstNode* body = nullptr;
    for (const auto& c : method.children) {
      if (c->kind == NodeKind::Block) body = c.get();
    }
    std::vector<std::size_t> exits{kCfgEntry};
    if (body) exits = build(*body, exits);
    link(exits, kCfgExit);
    return std::move(g_);
  }

 private:
  struct JumpScope {
    bool is_loop = false;
    std::vector<std::size_t> breaks;
    std::vector<std::size_t> continues;
  };

  void link(const std::vector<std::size_t>& preds, std::size_t to) {
    for (std::size_t p : preds) edge(p, to);
  }

  // Edges are kept unique; an empty branch can report its head twice.
  void edge(std::size_t from, std::size_t to) {
    if (seen_.insert({from, to}).second) g_.add_edge(from, to);
  }

  std::size_t node(const AstNode& stmt, const std::vector<std::size_t>& preds) {
    std::size_t id = g_.add_node(std::string(java::kind_name(stmt.kind)));
    link(preds, id);
    return id;
  }

  JumpScope* innermost(bool loop_only) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (!loop_only || it->is_loop) return &*it;
    }
    return nullptr;
  }

  static void append(std::vector<std::size_t>& to, const std::vector<std::size_t>& from) {
    to.insert(to.end(), from.begin(), from.end());
  }

  // Builds `stmt` reached from `preds`; returns the nodes that fall through.
  std::vector<std::size_t> build(const AstNode& stmt, std::vector<std::size_t> preds) {
    switch (stmt.kind) {
      case NodeKind::Block: {
        for (const auto& c : stmt.children) preds = build(*c, std::move(preds));
        return preds;
      }
      case NodeKind::Return:
      case NodeKind::Throw: {
        edge(node(stmt, preds), kCfgExit);
        return {};
      }
      case NodeKind::Break: {
        std::size_t id = node(stmt, preds);
        if (JumpScope* s = innermost(false)) {
          s->breaks.push_back(id);
        } else {
          edge(id, kCfgExit);
        }
        return {};
      }
      case NodeKind::Continue: {
        std::size_t id = node(stmt, preds);
        if (JumpScope* s = innermost(true)) {
          s->continues.push_back(id);
        } else {
          edge(id, kCfgExit);
        }
        return {};
      }
      case NodeKind::If: {
        std::size_t cond = node(stmt, preds);
        auto exits = build(stmt.child(1), {cond});
        if (stmt.size() > 2) {
          append(exits, build(stmt.child(2), {cond}));
        } else {
          exits.push_back(cond);
        }
        return exits;
      }
      case NodeKind::While:
      case NodeKind::For:
      case NodeKind::ForEach: {
        std::size_t head = node(stmt, preds);
        const AstNode& body = stmt.child(stmt.kind == NodeKind::While ? 1 : 3);
        scopes_.push_back({true, {}, {}});
        auto body_exits = build(body, {head});
        JumpScope scope = std::move(scopes_.back());
        scopes_.pop_back();
        link(body_exits, head);
        link(scope.continues, head);
        bool infinite = (stmt.kind == NodeKind::While && is_true_literal(stmt.child(0))) ||
                        (stmt.kind == NodeKind::For &&
                         (stmt.child(1).kind == NodeKind::EmptyStatement ||
                          is_true_literal(stmt.child(1))));
        std::vector<std::size_t> exits;
        if (!infinite) exits.push_back(head);
        append(exits, scope.breaks);
        return exits;
      }
      case NodeKind::DoWhile: {
        std::size_t body_entry = g_.node_count;
        scopes_.push_back({true, {}, {}});
        auto body_exits = build(stmt.child(0), preds);
        JumpScope scope = std::move(scopes_.back());
        scopes_.pop_back();
        bool body_empty = g_.node_count == body_entry;
        std::size_t cond = g_.add_node(std::string(java::kind_name(stmt.kind)));
        if (body_empty) {
          link(preds, cond);
          edge(cond, cond);
        } else {
          edge(cond, body_entry);
        }
        link(body_exits, cond);
        link(scope.continues, cond);
        std::vector<std::size_t> exits;
        if (!is_true_literal(stmt.child(1))) exits.push_back(cond);
        append(exits, scope.breaks);
        return exits;
      }
      case NodeKind::Switch: {
        std::size_t sw = node(stmt, preds);
        scopes_.push_back({false, {}, {}});
        std::vector<std::size_t> fall;
        bool has_default = false;
        for (std::size_t i = 1; i < stmt.size(); ++i) {
          const AstNode& label = stmt.child(i);
          has_default |= label.kind == NodeKind::Default;
          fall.push_back(sw);
          std::size_t head = node(label, fall);
          std::vector<std::size_t> exits{head};
          std::size_t first = label.kind == NodeKind::Case ? 1 : 0;
          for (std::size_t j = first; j < label.size(); ++j) {
            exits = build(label.child(j), std::move(exits));
          }
          fall = std::move(exits);
        }
        JumpScope scope = std::move(scopes_.back());
        scopes_.pop_back();
        std::vector<std::size_t> exits = std::move(fall);
        append(exits, scope.breaks);
        if (!has_default) exits.push_back(sw);
        return exits;
      }
      case NodeKind::Try: {
        std::size_t t = node(stmt, preds);
        std::size_t i = 0;
        while (stmt.child(i).kind != NodeKind::Block) ++i;
        std::size_t first_inner = g_.node_count;
        auto exits = build(stmt.child(i), {t});
        std::size_t end_inner = g_.node_count;
        std::vector<std::size_t> throwing;
        for (std::size_t n = first_inner; n < end_inner; ++n) throwing.push_back(n);
        if (throwing.empty()) throwing.push_back(t);
        for (++i; i < stmt.size() && stmt.child(i).kind == NodeKind::Catch; ++i) {
          std::size_t head = node(stmt.child(i), throwing);
          append(exits, build(stmt.child(i).child(1), {head}));
        }
        if (i < stmt.size() && stmt.child(i).kind == NodeKind::Finally) {
          std::size_t fin = node(stmt.child(i), exits);
          exits = build(stmt.child(i).child(0), {fin});
        }
        return exits;
      }
      case NodeKind::Synchronized: {
        std::size_t s = node(stmt, preds);
        return build(stmt.child(1), {s});
      }
      default:
        return {node(stmt, preds)};
    }
  }

  CodeGraph g_;
  std::vector<JumpScope> scopes_;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
};

}  // namespace

CodeGraph ast_to_graph(const AstNode& root) {
  CodeGraph g;
  g.kind = GraphKind::Ast;
  add_subtree(g, root);
  return g;
}

CodeGraph build_cfg(const AstNode& method) { return CfgBuilder().run(method); }

std::vector<CodeGraph> build_cfgs(const AstNode& root) {
  std::vector<CodeGraph> out;
  java::visit(root, [&](const AstNode& n) {
    if (n.kind == NodeKind::MethodDecl || n.kind == NodeKind::ConstructorDecl) {
      bool has_body = !n.children.empty() && n.children.back()->kind == NodeKind::Block;
      if (has_body) out.push_back(build_cfg(n));
    }
    return true;
  });
  return out;
}

std::string to_dot(const CodeGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < g.node_count; ++i) {
    out << "  n" << i << " [label=\"" << g.node_labels[i] << "\"];\n";
  }
  for (const auto& [a, b] : g.edges) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace vfix
