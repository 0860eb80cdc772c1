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

#include <sstream>

#include "vfix/java/parser.hpp"

namespace vfix::java {

namespace {

std::string modifier_text(std::uint32_t m) {
  std::string out;
  auto add = [&](std::uint32_t bit, const char* word) {
    if (m & bit) {
      out += word;
      out += ' ';
    }
  };
  add(kPublic, "public");
  add(kProtected, "protected");
  add(kPrivate, "private");
  add(kStatic, "static");
  add(kFinal, "final");
  add(kAbstract, "abstract");
  add(kNative, "native");
  add(kSynchronized, "synchronized");
  add(kTransient, "transient");
  add(kVolatile, "volatile");
  add(kStrictfp, "strictfp");
  add(kDefault, "default");
  return out;
}

class Printer {
 public:
  std::string run(const AstNode& root) {
    node(root, 0);
    return out_.str();
  }

 private:
  void indent(int depth) { out_ << std::string(static_cast<std::size_t>(depth) * 2, ' '); }

  void members(const AstNode& owner, std::size_t from, int depth) {
    for (std::size_t i = from; i < owner.size(); ++i) node(owner.child(i), depth);
  }

  void declarators(const AstNode& decl) {
    for (std::size_t i = 1; i < decl.size(); ++i) {
      if (i > 1) out_ << ", ";
      const AstNode& d = decl.child(i);
      out_ << d.text;
      if (!d.children.empty()) {
        out_ << " = ";
        expr(d.child(0), true);
      }
    }
  }

  void params(const AstNode& owner, std::size_t from, std::size_t to) {
    out_ << "(";
    for (std::size_t i = from; i < to; ++i) {
      if (i > from) out_ << ", ";
      const AstNode& p = owner.child(i);
      out_ << modifier_text(p.modifiers) << p.child(0).text << " " << p.text;
    }
    out_ << ")";
  }

  void type_header(const AstNode& n, const char* keyword) {
    out_ << modifier_text(n.modifiers) << keyword << " " << n.text;
    std::size_t i = 0;
    if (n.kind == NodeKind::ClassDecl) {
      if (n.has_extends) out_ << " extends " << n.supertypes[i++];
      if (i < n.supertypes.size()) {
        out_ << " implements ";
        for (std::size_t j = i; j < n.supertypes.size(); ++j) {
          if (j > i) out_ << ", ";
          out_ << n.supertypes[j];
        }
      }
    } else if (!n.supertypes.empty()) {
      out_ << (n.kind == NodeKind::InterfaceDecl ? " extends " : " implements ");
      for (std::size_t j = 0; j < n.supertypes.size(); ++j) {
        if (j) out_ << ", ";
        out_ << n.supertypes[j];
      }
    }
  }

  void node(const AstNode& n, int depth) {
    switch (n.kind) {
      case NodeKind::CompilationUnit:
        for (const auto& c : n.children) node(*c, depth);
        return;
      case NodeKind::PackageDecl:
        out_ << "package " << n.text << ";\n";
        return;
      case NodeKind::ImportDecl:
        out_ << "import " << n.text << ";\n";
        return;
      case NodeKind::ClassDecl:
      case NodeKind::InterfaceDecl: {
        indent(depth);
        type_header(n, n.kind == NodeKind::ClassDecl ? "class" : "interface");
        out_ << " {\n";
        members(n, 0, depth + 1);
        indent(depth);
        out_ << "}\n";
        return;
      }
      case NodeKind::EnumDecl: {
        indent(depth);
        type_header(n, "enum");
        out_ << " {\n";
        std::size_t i = 0;
        indent(depth + 1);
        for (; i < n.size() && n.child(i).kind == NodeKind::VarDeclarator; ++i) {
          if (i) out_ << ", ";
          const AstNode& c = n.child(i);
          out_ << c.text;
          if (!c.children.empty()) args(c, 0);
        }
        out_ << ";\n";
        members(n, i, depth + 1);
        indent(depth);
        out_ << "}\n";
        return;
      }
      case NodeKind::FieldDecl:
        indent(depth);
        out_ << modifier_text(n.modifiers) << n.child(0).text << " ";
        declarators(n);
        out_ << ";\n";
        return;
      case NodeKind::MethodDecl: {
        indent(depth);
        out_ << modifier_text(n.modifiers) << n.child(0).text << " " << n.text;
        std::size_t end = n.size();
        bool has_body = end > 1 && n.child(end - 1).kind == NodeKind::Block;
        if (has_body) --end;
        params(n, 1, end);
        if (has_body) {
          out_ << " ";
          block(n.child(end), depth);
          out_ << "\n";
        } else {
          out_ << ";\n";
        }
        return;
      }
      case NodeKind::ConstructorDecl: {
        indent(depth);
        out_ << modifier_text(n.modifiers) << n.text;
        params(n, 0, n.size() - 1);
        out_ << " ";
        block(n.child(n.size() - 1), depth);
        out_ << "\n";
        return;
      }
      case NodeKind::Initializer:
        indent(depth);
        if (n.modifiers & kStatic) out_ << "static ";
        block(n.child(0), depth);
        out_ << "\n";
        return;
      default:
        indent(depth);
        statement(n, depth);
        out_ << "\n";
        return;
    }
  }

  void block(const AstNode& b, int depth) {
    out_ << "{\n";
    for (const auto& c : b.children) {
      indent(depth + 1);
      statement(*c, depth + 1);
      out_ << "\n";
    }
    indent(depth);
    out_ << "}";
  }

  void local_decl(const AstNode& n) {
    out_ << modifier_text(n.modifiers) << n.child(0).text << " ";
    declarators(n);
  }

  void statement(const AstNode& n, int depth) {
    switch (n.kind) {
      case NodeKind::Block:
        block(n, depth);
        return;
      case NodeKind::LocalVarDecl:
        local_decl(n);
        out_ << ";";
        return;
      case NodeKind::If:
        out_ << "if (";
        expr(n.child(0), true);
        out_ << ") ";
        statement(n.child(1), depth);
        if (n.size() > 2) {
          out_ << " else ";
          statement(n.child(2), depth);
        }
        return;
      case NodeKind::While:
        out_ << "while (";
        expr(n.child(0), true);
        out_ << ") ";
        statement(n.child(1), depth);
        return;
      case NodeKind::DoWhile:
        out_ << "do ";
        statement(n.child(0), depth);
        out_ << " while (";
        expr(n.child(1), true);
        out_ << ");";
        return;
      case NodeKind::For: {
        out_ << "for (";
        const AstNode& init = n.child(0);
        for (std::size_t i = 0; i < init.size(); ++i) {
          if (i) out_ << ", ";
          if (init.child(i).kind == NodeKind::LocalVarDecl) {
            local_decl(init.child(i));
          } else {
            expr(init.child(i).child(0), true);
          }
        }
        out_ << "; ";
        if (n.child(1).kind != NodeKind::EmptyStatement) expr(n.child(1), true);
        out_ << "; ";
        const AstNode& update = n.child(2);
        for (std::size_t i = 0; i < update.size(); ++i) {
          if (i) out_ << ", ";
          expr(update.child(i).child(0), true);
        }
        out_ << ") ";
        statement(n.child(3), depth);
        return;
      }
      case NodeKind::ForEach:
        out_ << "for (" << n.child(0).text << " " << n.child(1).text << " : ";
        expr(n.child(2), true);
        out_ << ") ";
        statement(n.child(3), depth);
        return;
      case NodeKind::Switch:
        out_ << "switch (";
        expr(n.child(0), true);
        out_ << ") {\n";
        for (std::size_t i = 1; i < n.size(); ++i) {
          const AstNode& label = n.child(i);
          indent(depth + 1);
          std::size_t first = 0;
          if (label.kind == NodeKind::Case) {
            out_ << "case ";
            expr(label.child(0), true);
            out_ << ":\n";
            first = 1;
          } else {
            out_ << "default:\n";
          }
          for (std::size_t j = first; j < label.size(); ++j) {
            indent(depth + 2);
            statement(label.child(j), depth + 2);
            out_ << "\n";
          }
        }
        indent(depth);
        out_ << "}";
        return;
      case NodeKind::Try: {
        out_ << "try ";
        std::size_t i = 0;
        if (n.child(0).kind != NodeKind::Block) {
          out_ << "(";
          for (; n.child(i).kind != NodeKind::Block; ++i) {
            if (i) out_ << "; ";
            if (n.child(i).kind == NodeKind::LocalVarDecl) {
              local_decl(n.child(i));
            } else {
              expr(n.child(i).child(0), true);
            }
          }
          out_ << ") ";
        }
        block(n.child(i++), depth);
        for (; i < n.size(); ++i) {
          const AstNode& c = n.child(i);
          if (c.kind == NodeKind::Catch) {
            const AstNode& p = c.child(0);
            out_ << " catch (" << modifier_text(p.modifiers) << p.child(0).text << " " << p.text
                 << ") ";
            block(c.child(1), depth);
          } else {
            out_ << " finally ";
            block(c.child(0), depth);
          }
        }
        return;
      }
      case NodeKind::Return:
        out_ << "return";
        if (!n.children.empty()) {
          out_ << " ";
          expr(n.child(0), true);
        }
        out_ << ";";
        return;
      case NodeKind::Throw:
        out_ << "throw ";
        expr(n.child(0), true);
        out_ << ";";
        return;
      case NodeKind::Break:
        out_ << "break;";
        return;
      case NodeKind::Continue:
        out_ << "continue;";
        return;
      case NodeKind::ExprStatement:
        expr(n.child(0), true);
        out_ << ";";
        return;
      case NodeKind::EmptyStatement:
        out_ << ";";
        return;
      case NodeKind::Synchronized:
        out_ << "synchronized (";
        expr(n.child(0), true);
        out_ << ") ";
        block(n.child(1), depth);
        return;
      case NodeKind::Assert:
        out_ << "assert ";
        expr(n.child(0), true);
        if (n.size() > 1) {
          out_ << " : ";
          expr(n.child(1), true);
        }
        out_ << ";";
        return;
      default:
        expr(n, true);
        return;
    }
  }

  void args(const AstNode& n, std::size_t from) {
    out_ << "(";
    for (std::size_t i = from; i < n.size(); ++i) {
      if (i > from) out_ << ", ";
      expr(n.child(i), true);
    }
    out_ << ")";
  }

  // `top` suppresses the defensive parentheses around compound expressions.
  void expr(const AstNode& n, bool top) {
    const char* open = top ? "" : "(";
    const char* close = top ? "" : ")";
    switch (n.kind) {
      case NodeKind::Identifier:
      case NodeKind::Literal:
      case NodeKind::This:
      case NodeKind::Super:
      case NodeKind::MethodRef:
        out_ << n.text;
        return;
      case NodeKind::Call:
        if (n.has_receiver) {
          expr(n.child(0), false);
          out_ << ".";
          out_ << n.text;
          args(n, 1);
        } else {
          out_ << n.text;
          args(n, 0);
        }
        return;
      case NodeKind::FieldAccess:
        expr(n.child(0), false);
        out_ << "." << n.text;
        return;
      case NodeKind::ArrayAccess:
        expr(n.child(0), false);
        out_ << "[";
        expr(n.child(1), true);
        out_ << "]";
        return;
      case NodeKind::BinaryOp:
      case NodeKind::Assign:
        out_ << open;
        expr(n.child(0), false);
        out_ << " " << n.text << " ";
        expr(n.child(1), false);
        out_ << close;
        return;
      case NodeKind::UnaryOp:
        out_ << "(" << n.text;
        expr(n.child(0), false);
        out_ << ")";
        return;
      case NodeKind::PostfixOp:
        out_ << open;
        expr(n.child(0), false);
        out_ << n.text << close;
        return;
      case NodeKind::Conditional:
        out_ << open;
        expr(n.child(0), false);
        out_ << " ? ";
        expr(n.child(1), false);
        out_ << " : ";
        expr(n.child(2), false);
        out_ << close;
        return;
      case NodeKind::Cast:
        out_ << "((" << n.child(0).text << ") ";
        expr(n.child(1), false);
        out_ << ")";
        return;
      case NodeKind::InstanceOf:
        out_ << "(";
        expr(n.child(0), false);
        out_ << " instanceof " << n.child(1).text << ")";
        return;
      case NodeKind::New: {
        out_ << "new " << n.child(0).text;
        std::size_t end = n.size();
        bool anon = end > 1 && n.child(end - 1).kind == NodeKind::AnonymousClass;
        if (anon) --end;
        out_ << "(";
        for (std::size_t i = 1; i < end; ++i) {
          if (i > 1) out_ << ", ";
          expr(n.child(i), true);
        }
        out_ << ")";
        if (anon) {
          out_ << " {\n";
          members(n.child(end), 0, 1);
          out_ << "}";
        }
        return;
      }
      case NodeKind::NewArray: {
        out_ << "new " << n.child(0).text;
        int dims = std::stoi(n.text);
        int written = 0;
        std::size_t i = 1;
        for (; i < n.size() && n.child(i).kind != NodeKind::ArrayInit; ++i, ++written) {
          out_ << "[";
          expr(n.child(i), true);
          out_ << "]";
        }
        for (; written < dims; ++written) out_ << "[]";
        if (i < n.size()) expr(n.child(i), true);
        return;
      }
      case NodeKind::ArrayInit:
        out_ << "{";
        for (std::size_t i = 0; i < n.size(); ++i) {
          if (i) out_ << ", ";
          expr(n.child(i), true);
        }
        out_ << "}";
        return;
      case NodeKind::Lambda:
        out_ << "(() -> null)";
        return;
      case NodeKind::ClassLiteral:
        out_ << n.child(0).text << ".class";
        return;
      default:
        out_ << "/* " << kind_name(n.kind) << " */";
        return;
    }
  }

  std::ostringstream out_;
};

}  // namespace

std::string print_java(const AstNode& root) { return Printer().run(root); }

}  // namespace vfix::java
