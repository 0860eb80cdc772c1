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

#include "vfix/java/parser.hpp"

#include <unordered_map>
#include <unordered_set>

namespace vfix::java {

namespace {

using NodePtr = std::unique_ptr<AstNode>;

const std::unordered_set<std::string_view>& primitive_types() {
  static const std::unordered_set<std::string_view> p = {
      "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};
  return p;
}

const std::unordered_map<std::string_view, std::uint32_t>& modifier_bits() {
  static const std::unordered_map<std::string_view, std::uint32_t> m = {
      {"public", kPublic},     {"protected", kProtected}, {"private", kPrivate},
      {"static", kStatic},     {"final", kFinal},         {"abstract", kAbstract},
      {"native", kNative},     {"synchronized", kSynchronized},
      {"transient", kTransient}, {"volatile", kVolatile}, {"strictfp", kStrictfp},
  };
  return m;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  NodePtr compilation_unit() {
    auto unit = make(NodeKind::CompilationUnit, "");
    unit->span.start_line = 1;
    skip_annotations();
    if (at_kw("package")) {
      auto pkg = make(NodeKind::PackageDecl, "");
      advance();
      pkg->text = qualified_name();
      expect(";");
      finish(*pkg);
      unit->add(std::move(pkg));
    }
    while (at_kw("import")) {
      auto imp = make(NodeKind::ImportDecl, "");
      advance();
      std::string name;
      if (at_kw("static")) {
        advance();
        name = "static ";
      }
      name += qualified_name();
      if (at(".")) {
        advance();
        expect("*");
        name += ".*";
      }
      imp->text = std::move(name);
      expect(";");
      finish(*imp);
      unit->add(std::move(imp));
    }
    while (!at_end()) {
      if (at(";")) {
        advance();
        continue;
      }
      std::uint32_t mods = modifiers();
      unit->add(type_decl(mods));
    }
    unit->span.end_line = std::max(1, last_line_);
    return unit;
  }

 private:
  // ---- token helpers ----

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek_tok(std::size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == TokenKind::End; }
  bool at(std::string_view op) const {
    return cur().kind == TokenKind::Operator && cur().text == op;
  }
  bool at_kw(std::string_view kw) const {
    return cur().kind == TokenKind::Keyword && cur().text == kw;
  }
  bool at_ident() const { return cur().kind == TokenKind::Identifier; }
  bool tok_is(const Token& t, std::string_view op) const {
    return t.kind == TokenKind::Operator && t.text == op;
  }

  const Token& advance() {
    const Token& t = toks_[pos_];
    last_line_ = t.line;
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = cur();
    std::string what = t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'";
    throw SyntaxError(ParseFailure{t.line, t.column, msg + " at " + what});
  }

  void expect(std::string_view op) {
    if (!at(op)) fail("expected '" + std::string(op) + "'");
    advance();
  }
  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) fail("expected '" + std::string(kw) + "'");
    advance();
  }
  std::string ident() {
    if (!at_ident()) fail("expected identifier");
    return advance().text;
  }

  // `>` tokens adjacent in the source combine into one operator.
  bool adjacent(std::size_t a, std::size_t b) const {
    return toks_[b].offset == toks_[a].offset + toks_[a].text.size();
  }
  // Operator at the cursor, joining `>` sequences. Sets `width` in tokens.
  std::string operator_at(std::size_t& width) const {
    width = 1;
    if (cur().kind != TokenKind::Operator) return {};
    if (cur().text != ">") return cur().text;
    std::string op = ">";
    std::size_t i = pos_;
    while (op.size() < 3 && tok_is(toks_[i + 1], ">") && adjacent(i, i + 1)) {
      op += ">";
      ++i;
    }
    if (tok_is(toks_[i + 1], "=") && adjacent(i, i + 1)) {
      op += "=";
      ++i;
    }
    width = i - pos_ + 1;
    return op;
  }

  NodePtr make(NodeKind kind, std::string text) {
    auto n = std::make_unique<AstNode>(kind, std::move(text), Span{cur().line, cur().line});
    return n;
  }
  NodePtr make_at(NodeKind kind, std::string text, int line) {
    return std::make_unique<AstNode>(kind, std::move(text), Span{line, line});
  }
  void finish(AstNode& n) {
    n.span.end_line = std::max(n.span.start_line, last_line_);
    for (const auto& c : n.children) {
      n.span.start_line = std::min(n.span.start_line, c->span.start_line);
      n.span.end_line = std::max(n.span.end_line, c->span.end_line);
    }
  }

  std::string qualified_name() {
    std::string name = ident();
    while (at(".") && peek_tok().kind == TokenKind::Identifier) {
      advance();
      name += "." + ident();
    }
    return name;
  }

  // ---- annotations and modifiers ----

  void skip_balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    do {
      if (at_end()) fail("unbalanced '" + std::string(open) + "'");
      if (at(open)) ++depth;
      else if (at(close)) --depth;
      advance();
    } while (depth > 0);
  }

  void skip_annotations() {
    while (at("@") && !(peek_tok().kind == TokenKind::Keyword && peek_tok().text == "interface")) {
      advance();
      qualified_name();
      if (at("(")) skip_balanced("(", ")");
    }
  }

  std::uint32_t modifiers() {
    std::uint32_t mods = 0;
    for (;;) {
      skip_annotations();
      if (cur().kind == TokenKind::Keyword) {
        auto it = modifier_bits().find(cur().text);
        if (it != modifier_bits().end()) {
          mods |= it->second;
          advance();
          continue;
        }
        if (cur().text == "default" && !tok_is(peek_tok(), ":")) {
          mods |= kDefault;
          advance();
          continue;
        }
      }
      if (at("@")) fail("annotation type declarations are not supported");
      return mods;
    }
  }

  // ---- types ----

  void type_arguments() {
    expect("<");
    if (at(">")) {
      advance();
      return;
    }
    for (;;) {
      skip_annotations();
      if (at("?")) {
        advance();
        if (at_kw("extends") || at_kw("super")) {
          advance();
          type();
        }
      } else {
        type();
      }
      if (at(",")) {
        advance();
        continue;
      }
      expect(">");
      return;
    }
  }

  void type_parameters() {
    expect("<");
    for (;;) {
      skip_annotations();
      ident();
      if (at_kw("extends")) {
        advance();
        type();
        while (at("&")) {
          advance();
          type();
        }
      }
      if (at(",")) {
        advance();
        continue;
      }
      expect(">");
      return;
    }
  }

  std::string type_name() {
    skip_annotations();
    std::string name;
    if (cur().kind == TokenKind::Keyword && primitive_types().count(cur().text)) {
      name = advance().text;
    } else {
      name = ident();
      if (at("<")) type_arguments();
      while (at(".") && peek_tok().kind == TokenKind::Identifier) {
        advance();
        name += "." + ident();
        if (at("<")) type_arguments();
      }
    }
    while (at("[") && tok_is(peek_tok(), "]")) {
      advance();
      advance();
      name += "[]";
    }
    return name;
  }

  NodePtr type() {
    auto t = make(NodeKind::Type, "");
    t->text = type_name();
    finish(*t);
    return t;
  }

  // Speculative parse helper: true if a type parses at the cursor. Restores
  // the cursor either way.
  bool try_type(std::size_t& end_pos) {
    std::size_t save = pos_;
    int save_line = last_line_;
    bool ok = true;
    try {
      type_name();
      end_pos = pos_;
    } catch (const SyntaxError&) {
      ok = false;
    }
    pos_ = save;
    last_line_ = save_line;
    return ok;
  }

  bool starts_local_var_decl() {
    std::size_t save = pos_;
    int save_line = last_line_;
    bool result = false;
    try {
      modifiers();
      std::size_t end = 0;
      if ((at_ident() || (cur().kind == TokenKind::Keyword && primitive_types().count(cur().text))) &&
          try_type(end) && toks_[end].kind == TokenKind::Identifier) {
        const Token& next = toks_[std::min(end + 1, toks_.size() - 1)];
        result = tok_is(next, "=") || tok_is(next, ";") || tok_is(next, ",") ||
                 tok_is(next, "[") || tok_is(next, ":");
      }
    } catch (const SyntaxError&) {
      result = false;
    }
    pos_ = save;
    last_line_ = save_line;
    return result;
  }

  // Cheap scan for `Type::` so that ordinary identifiers skip the speculative
  // type parse.
  bool method_ref_ahead() const {
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Identifier) continue;
      if (t.kind == TokenKind::Keyword && (t.text == "extends" || t.text == "super")) continue;
      if (t.kind != TokenKind::Operator) return false;
      if (t.text == "::") return true;
      if (t.text != "." && t.text != "<" && t.text != ">" && t.text != "," && t.text != "?" &&
          t.text != "[" && t.text != "]") {
        return false;
      }
    }
    return false;
  }

  // ---- declarations ----

  NodePtr type_decl(std::uint32_t mods) {
    if (at_kw("class")) return class_decl(mods);
    if (at_kw("interface")) return interface_decl(mods);
    if (at_kw("enum")) return enum_decl(mods);
    if (at_ident() && cur().text == "record") fail("records are not supported");
    fail("expected class, interface or enum declaration");
  }

  NodePtr class_decl(std::uint32_t mods) {
    auto n = make(NodeKind::ClassDecl, "");
    n->modifiers = mods;
    expect_kw("class");
    n->text = ident();
    if (at("<")) type_parameters();
    if (at_kw("extends")) {
      advance();
      n->has_extends = true;
      n->supertypes.push_back(type_name());
    }
    if (at_kw("implements")) {
      advance();
      n->supertypes.push_back(type_name());
      while (at(",")) {
        advance();
        n->supertypes.push_back(type_name());
      }
    }
    if (at_ident() && cur().text == "permits") fail("sealed classes are not supported");
    class_body(*n);
    finish(*n);
    return n;
  }

  NodePtr interface_decl(std::uint32_t mods) {
    auto n = make(NodeKind::InterfaceDecl, "");
    n->modifiers = mods;
    expect_kw("interface");
    n->text = ident();
    if (at("<")) type_parameters();
    if (at_kw("extends")) {
      advance();
      n->supertypes.push_back(type_name());
      while (at(",")) {
        advance();
        n->supertypes.push_back(type_name());
      }
    }
    class_body(*n);
    finish(*n);
    return n;
  }

  NodePtr enum_decl(std::uint32_t mods) {
    auto n = make(NodeKind::EnumDecl, "");
    n->modifiers = mods;
    expect_kw("enum");
    n->text = ident();
    if (at_kw("implements")) {
      advance();
      n->supertypes.push_back(type_name());
      while (at(",")) {
        advance();
        n->supertypes.push_back(type_name());
      }
    }
    expect("{");
    while (!at(";") && !at("}")) {
      skip_annotations();
      auto c = make(NodeKind::VarDeclarator, ident());
      if (at("(")) arguments(*c);
      if (at("{")) fail("enum constant bodies are not supported");
      finish(*c);
      n->add(std::move(c));
      if (at(",")) {
        advance();
        continue;
      }
      break;
    }
    if (at(";")) {
      advance();
      while (!at("}")) member(*n);
    }
    expect("}");
    finish(*n);
    return n;
  }

  void class_body(AstNode& owner) {
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unterminated class body");
      member(owner);
    }
    advance();
  }

  void member(AstNode& owner) {
    if (at(";")) {
      advance();
      return;
    }
    int line = cur().line;
    if (at("{") || (at_kw("static") && tok_is(peek_tok(), "{"))) {
      auto init = make(NodeKind::Initializer, "");
      if (at_kw("static")) {
        init->modifiers = kStatic;
        advance();
      }
      init->add(block());
      finish(*init);
      owner.add(std::move(init));
      return;
    }
    std::uint32_t mods = modifiers();
    if (at_kw("class") || at_kw("interface") || at_kw("enum")) {
      auto nested = type_decl(mods);
      nested->span.start_line = std::min(nested->span.start_line, line);
      owner.add(std::move(nested));
      return;
    }
    if (at("<")) type_parameters();
    // Constructor: Name '('
    if (at_ident() && tok_is(peek_tok(), "(")) {
      auto ctor = make_at(NodeKind::ConstructorDecl, advance().text, line);
      ctor->modifiers = mods;
      parameters(*ctor);
      throws_clause();
      ctor->add(block());
      finish(*ctor);
      owner.add(std::move(ctor));
      return;
    }
    auto t = type();
    std::string name = ident();
    if (at("(")) {
      auto m = make_at(NodeKind::MethodDecl, std::move(name), line);
      m->modifiers = mods;
      m->add(std::move(t));
      parameters(*m);
      while (at("[")) {
        advance();
        expect("]");
      }
      throws_clause();
      if (at_kw("default")) fail("annotation defaults are not supported");
      if (at(";")) {
        advance();
      } else {
        m->add(block());
      }
      finish(*m);
      owner.add(std::move(m));
      return;
    }
    auto f = make_at(NodeKind::FieldDecl, "", line);
    f->modifiers = mods;
    f->add(std::move(t));
    declarators(*f, std::move(name));
    expect(";");
    finish(*f);
    owner.add(std::move(f));
  }

  void throws_clause() {
    if (!at_kw("throws")) return;
    advance();
    type_name();
    while (at(",")) {
      advance();
      type_name();
    }
  }

  void parameters(AstNode& owner) {
    expect("(");
    if (at(")")) {
      advance();
      return;
    }
    for (;;) {
      owner.add(parameter());
      if (at(",")) {
        advance();
        continue;
      }
      expect(")");
      return;
    }
  }

  NodePtr parameter() {
    auto p = make(NodeKind::Parameter, "");
    p->modifiers = modifiers();
    auto t = type();
    if (at("...")) {
      advance();
      t->text += "...";
    }
    if (at_kw("this")) fail("receiver parameters are not supported");
    p->text = ident();
    while (at("[")) {
      advance();
      expect("]");
      t->text += "[]";
    }
    p->add(std::move(t));
    finish(*p);
    return p;
  }

  // Declarator list after the first name has been consumed.
  void declarators(AstNode& owner, std::string first) {
    std::string name = std::move(first);
    for (;;) {
      auto d = make_at(NodeKind::VarDeclarator, std::move(name), last_line_);
      while (at("[")) {
        advance();
        expect("]");
      }
      if (at("=")) {
        advance();
        d->add(variable_initializer());
      }
      finish(*d);
      owner.add(std::move(d));
      if (!at(",")) return;
      advance();
      name = ident();
    }
  }

  NodePtr variable_initializer() {
    if (at("{")) return array_initializer();
    return expression();
  }

  NodePtr array_initializer() {
    auto n = make(NodeKind::ArrayInit, "");
    expect("{");
    while (!at("}")) {
      n->add(variable_initializer());
      if (at(",")) {
        advance();
        continue;
      }
      break;
    }
    expect("}");
    finish(*n);
    return n;
  }

  // ---- statements ----

  NodePtr block() {
    auto b = make(NodeKind::Block, "");
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unterminated block");
      b->add(statement());
    }
    advance();
    finish(*b);
    return b;
  }

  NodePtr local_var_decl(bool require_semicolon) {
    auto d = make(NodeKind::LocalVarDecl, "");
    d->modifiers = modifiers();
    d->add(type());
    declarators(*d, ident());
    if (require_semicolon) expect(";");
    finish(*d);
    return d;
  }

  NodePtr statement() {
    if (at("{")) return block();
    if (at(";")) {
      auto n = make(NodeKind::EmptyStatement, "");
      advance();
      finish(*n);
      return n;
    }
    if (cur().kind == TokenKind::Keyword) {
      const std::string& kw = cur().text;
      if (kw == "if") return if_statement();
      if (kw == "while") return while_statement();
      if (kw == "do") return do_statement();
      if (kw == "for") return for_statement();
      if (kw == "switch") return switch_statement();
      if (kw == "try") return try_statement();
      if (kw == "return") {
        auto n = make(NodeKind::Return, "");
        advance();
        if (!at(";")) n->add(expression());
        expect(";");
        finish(*n);
        return n;
      }
      if (kw == "throw") {
        auto n = make(NodeKind::Throw, "");
        advance();
        n->add(expression());
        expect(";");
        finish(*n);
        return n;
      }
      if (kw == "break" || kw == "continue") {
        auto n = make(kw == "break" ? NodeKind::Break : NodeKind::Continue, "");
        advance();
        if (at_ident()) fail("labeled jumps are not supported");
        expect(";");
        finish(*n);
        return n;
      }
      if (kw == "synchronized") {
        auto n = make(NodeKind::Synchronized, "");
        advance();
        expect("(");
        n->add(expression());
        expect(")");
        n->add(block());
        finish(*n);
        return n;
      }
      if (kw == "assert") {
        auto n = make(NodeKind::Assert, "");
        advance();
        n->add(expression());
        if (at(":")) {
          advance();
          n->add(expression());
        }
        expect(";");
        finish(*n);
        return n;
      }
      if (kw == "class" || kw == "interface" || kw == "enum" || kw == "abstract" ||
          kw == "static") {
        fail("local type declarations are not supported");
      }
      if (kw == "final") return local_var_decl(true);
    }
    if (at("@")) return local_var_decl(true);
    if (at_ident() && tok_is(peek_tok(), ":")) fail("labeled statements are not supported");
    if (at_ident() && cur().text == "yield") fail("yield statements are not supported");
    if (starts_local_var_decl()) return local_var_decl(true);
    auto n = make(NodeKind::ExprStatement, "");
    n->add(expression());
    expect(";");
    finish(*n);
    return n;
  }

  NodePtr paren_condition() {
    expect("(");
    auto e = expression();
    expect(")");
    return e;
  }

  NodePtr if_statement() {
    auto n = make(NodeKind::If, "");
    advance();
    n->add(paren_condition());
    n->add(statement());
    if (at_kw("else")) {
      advance();
      n->add(statement());
    }
    finish(*n);
    return n;
  }

  NodePtr while_statement() {
    auto n = make(NodeKind::While, "");
    advance();
    n->add(paren_condition());
    n->add(statement());
    finish(*n);
    return n;
  }

  NodePtr do_statement() {
    auto n = make(NodeKind::DoWhile, "");
    advance();
    n->add(statement());
    expect_kw("while");
    n->add(paren_condition());
    expect(";");
    finish(*n);
    return n;
  }

  NodePtr for_statement() {
    int line = cur().line;
    advance();
    expect("(");
    // Enhanced for: [final] Type name ':'
    {
      std::size_t save = pos_;
      int save_line = last_line_;
      modifiers();
      std::size_t end = 0;
      if (try_type(end) && toks_[end].kind == TokenKind::Identifier &&
          tok_is(toks_[std::min(end + 1, toks_.size() - 1)], ":")) {
        auto n = make_at(NodeKind::ForEach, "", line);
        n->add(type());
        n->add(make(NodeKind::VarDeclarator, ident()));
        finish(*n->children.back());
        expect(":");
        n->add(expression());
        expect(")");
        n->add(statement());
        finish(*n);
        return n;
      }
      pos_ = save;
      last_line_ = save_line;
    }
    auto n = make_at(NodeKind::For, "", line);
    auto init = make(NodeKind::Block, "");
    if (!at(";")) {
      if (starts_local_var_decl()) {
        init->add(local_var_decl(false));
      } else {
        for (;;) {
          auto s = make(NodeKind::ExprStatement, "");
          s->add(expression());
          finish(*s);
          init->add(std::move(s));
          if (!at(",")) break;
          advance();
        }
      }
    }
    finish(*init);
    expect(";");
    NodePtr cond;
    if (at(";")) {
      cond = make(NodeKind::EmptyStatement, "");
    } else {
      cond = expression();
    }
    expect(";");
    auto update = make(NodeKind::Block, "");
    if (!at(")")) {
      for (;;) {
        auto s = make(NodeKind::ExprStatement, "");
        s->add(expression());
        finish(*s);
        update->add(std::move(s));
        if (!at(",")) break;
        advance();
      }
    }
    finish(*update);
    expect(")");
    n->add(std::move(init));
    n->add(std::move(cond));
    n->add(std::move(update));
    n->add(statement());
    finish(*n);
    return n;
  }

  NodePtr switch_statement() {
    auto n = make(NodeKind::Switch, "");
    advance();
    n->add(paren_condition());
    expect("{");
    while (!at("}")) {
      NodePtr label;
      if (at_kw("case")) {
        label = make(NodeKind::Case, "");
        advance();
        label->add(expression());
        if (at(",")) fail("multi-label case is not supported");
      } else if (at_kw("default")) {
        label = make(NodeKind::Default, "");
        advance();
      } else {
        fail("expected 'case' or 'default'");
      }
      if (at("->")) fail("arrow-form switch is not supported");
      expect(":");
      while (!at_kw("case") && !at_kw("default") && !at("}")) {
        if (at_end()) fail("unterminated switch");
        label->add(statement());
      }
      finish(*label);
      n->add(std::move(label));
    }
    advance();
    finish(*n);
    return n;
  }

  NodePtr try_statement() {
    auto n = make(NodeKind::Try, "");
    advance();
    if (at("(")) {
      advance();
      while (!at(")")) {
        if (starts_local_var_decl()) {
          n->add(local_var_decl(false));
        } else {
          auto s = make(NodeKind::ExprStatement, "");
          s->add(expression());
          finish(*s);
          n->add(std::move(s));
        }
        if (at(";")) {
          advance();
          continue;
        }
        break;
      }
      expect(")");
    }
    n->add(block());
    bool any = false;
    while (at_kw("catch")) {
      any = true;
      auto c = make(NodeKind::Catch, "");
      advance();
      expect("(");
      auto p = make(NodeKind::Parameter, "");
      p->modifiers = modifiers();
      auto t = type();
      while (at("|")) {
        advance();
        t->text += "|" + type_name();
      }
      finish(*t);
      p->text = ident();
      p->add(std::move(t));
      finish(*p);
      expect(")");
      c->add(std::move(p));
      c->add(block());
      finish(*c);
      n->add(std::move(c));
    }
    if (at_kw("finally")) {
      any = true;
      auto f = make(NodeKind::Finally, "");
      advance();
      f->add(block());
      finish(*f);
      n->add(std::move(f));
    }
    if (!any && n->children.size() == 1) fail("try without catch or finally");
    finish(*n);
    return n;
  }

  // ---- expressions ----

  NodePtr expression() {
    if (lambda_ahead()) return lambda();
    auto lhs = conditional();
    std::size_t width = 1;
    std::string op = operator_at(width);
    static const std::unordered_set<std::string> kAssignOps = {
        "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};
    if (kAssignOps.count(op)) {
      for (std::size_t i = 0; i < width; ++i) advance();
      auto n = make_at(NodeKind::Assign, op, lhs->span.start_line);
      n->add(std::move(lhs));
      n->add(expression());
      finish(*n);
      return n;
    }
    return lhs;
  }

  bool lambda_ahead() const {
    if (at_ident() && tok_is(peek_tok(), "->")) return true;
    if (!at("(")) return false;
    int depth = 0;
    std::size_t i = pos_;
    for (; i < toks_.size(); ++i) {
      if (tok_is(toks_[i], "(")) ++depth;
      else if (tok_is(toks_[i], ")") && --depth == 0) break;
      if (toks_[i].kind == TokenKind::End) return false;
    }
    return i + 1 < toks_.size() && tok_is(toks_[i + 1], "->");
  }

  // Lambdas are opaque leaves; the body is parsed for validity and dropped.
  NodePtr lambda() {
    auto n = make(NodeKind::Lambda, "");
    if (at_ident()) {
      advance();
    } else {
      skip_balanced("(", ")");
    }
    expect("->");
    if (at("{")) {
      block();
    } else {
      expression();
    }
    n->text = "->";
    finish(*n);
    return n;
  }

  NodePtr conditional() {
    auto c = binary(0);
    if (!at("?")) return c;
    advance();
    auto n = make_at(NodeKind::Conditional, "?", c->span.start_line);
    n->add(std::move(c));
    n->add(expression());
    expect(":");
    if (lambda_ahead()) {
      n->add(lambda());
    } else {
      n->add(conditional());
    }
    finish(*n);
    return n;
  }

  static int precedence(const std::string& op) {
    static const std::unordered_map<std::string, int> kPrec = {
        {"||", 1}, {"&&", 2}, {"|", 3},   {"^", 4},   {"&", 5},   {"==", 6},  {"!=", 6},
        {"<", 7},  {">", 7},  {"<=", 7},  {">=", 7},  {"<<", 8},  {">>", 8},  {">>>", 8},
        {"+", 9},  {"-", 9},  {"*", 10},  {"/", 10},  {"%", 10},
    };
    auto it = kPrec.find(op);
    return it == kPrec.end() ? -1 : it->second;
  }

  NodePtr binary(int min_prec) {
    auto lhs = unary();
    for (;;) {
      if (at_kw("instanceof")) {
        if (7 < min_prec) return lhs;
        advance();
        auto n = make_at(NodeKind::InstanceOf, "instanceof", lhs->span.start_line);
        n->add(std::move(lhs));
        if (at_kw("final")) advance();
        n->add(type());
        if (at_ident()) fail("pattern matching instanceof is not supported");
        finish(*n);
        lhs = std::move(n);
        continue;
      }
      std::size_t width = 1;
      std::string op = operator_at(width);
      int prec = precedence(op);
      if (prec < 0 || prec < min_prec) return lhs;
      for (std::size_t i = 0; i < width; ++i) advance();
      auto rhs = binary(prec + 1);
      auto n = make_at(NodeKind::BinaryOp, op, lhs->span.start_line);
      n->add(std::move(lhs));
      n->add(std::move(rhs));
      finish(*n);
      lhs = std::move(n);
    }
  }

  bool cast_ahead() {
    if (!at("(")) return false;
    const Token& next = peek_tok();
    if (next.kind == TokenKind::Keyword && primitive_types().count(next.text)) {
      std::size_t save = pos_;
      advance();
      std::size_t end = 0;
      bool ok = try_type(end) && tok_is(toks_[end], ")");
      pos_ = save;
      return ok;
    }
    if (next.kind != TokenKind::Identifier) return false;
    std::size_t save = pos_;
    int save_line = last_line_;
    advance();
    std::size_t end = 0;
    bool ok = try_type(end) && tok_is(toks_[end], ")");
    pos_ = save;
    last_line_ = save_line;
    if (!ok) return false;
    const Token& after = toks_[std::min(end + 1, toks_.size() - 1)];
    switch (after.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral:
        return true;
      case TokenKind::Keyword:
        return after.text == "this" || after.text == "super" || after.text == "new" ||
               after.text == "true" || after.text == "false" || after.text == "null";
      case TokenKind::Operator:
        return after.text == "(" || after.text == "!" || after.text == "~";
      default:
        return false;
    }
  }

  NodePtr unary() {
    if (at("+") || at("-") || at("!") || at("~") || at("++") || at("--")) {
      auto n = make(NodeKind::UnaryOp, advance().text);
      n->add(unary());
      finish(*n);
      return n;
    }
    if (cast_ahead()) {
      auto n = make(NodeKind::Cast, "");
      advance();
      n->add(type());
      expect(")");
      if (lambda_ahead()) {
        n->add(lambda());
      } else {
        n->add(unary());
      }
      finish(*n);
      return n;
    }
    auto e = postfix_chain(primary());
    while (at("++") || at("--")) {
      auto n = make_at(NodeKind::PostfixOp, advance().text, e->span.start_line);
      n->add(std::move(e));
      finish(*n);
      e = std::move(n);
    }
    return e;
  }

  void arguments(AstNode& call) {
    expect("(");
    if (at(")")) {
      advance();
      return;
    }
    for (;;) {
      call.add(expression());
      if (at(",")) {
        advance();
        continue;
      }
      expect(")");
      return;
    }
  }

  NodePtr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral: {
        auto n = make(NodeKind::Literal, t.text);
        advance();
        finish(*n);
        return n;
      }
      case TokenKind::Identifier: {
        // Type::method
        std::size_t end = 0;
        if (method_ref_ahead() && try_type(end) && tok_is(toks_[end], "::")) {
          auto n = make(NodeKind::MethodRef, "");
          std::string lhs = type_name();
          advance();
          n->text = lhs + "::" + (at_kw("new") ? advance().text : ident());
          finish(*n);
          return n;
        }
        auto name = make(NodeKind::Identifier, advance().text);
        if (at("(")) {
          auto call = make_at(NodeKind::Call, name->text, name->span.start_line);
          arguments(*call);
          finish(*call);
          return call;
        }
        finish(*name);
        return name;
      }
      case TokenKind::Keyword: {
        if (t.text == "true" || t.text == "false" || t.text == "null") {
          auto n = make(NodeKind::Literal, t.text);
          advance();
          finish(*n);
          return n;
        }
        if (t.text == "this" || t.text == "super") {
          bool is_this = t.text == "this";
          auto n = make(is_this ? NodeKind::This : NodeKind::Super, t.text);
          advance();
          if (at("(")) {
            // Explicit constructor invocation this(...) / super(...).
            auto call = make_at(NodeKind::Call, n->text, n->span.start_line);
            arguments(*call);
            finish(*call);
            return call;
          }
          if (at("::")) {
            advance();
            auto r = make_at(NodeKind::MethodRef, n->text + "::" + ident(), n->span.start_line);
            finish(*r);
            return r;
          }
          finish(*n);
          return n;
        }
        if (t.text == "new") return creator();
        if (primitive_types().count(t.text)) {
          // int.class, int[].class, int[]::new
          auto n = make(NodeKind::ClassLiteral, "");
          n->add(type());
          if (at("::")) {
            advance();
            expect_kw("new");
            auto r = make_at(NodeKind::MethodRef, n->child(0).text + "::new", n->span.start_line);
            finish(*r);
            return r;
          }
          expect(".");
          expect_kw("class");
          finish(*n);
          return n;
        }
        if (t.text == "switch") fail("switch expressions are not supported");
        fail("unexpected keyword");
      }
      case TokenKind::Operator: {
        if (t.text == "(") {
          advance();
          auto e = expression();
          expect(")");
          return e;
        }
        fail("unexpected token in expression");
      }
      case TokenKind::End:
        fail("unexpected end of input in expression");
    }
    fail("unexpected token");
  }

  NodePtr creator() {
    auto start_line = cur().line;
    expect_kw("new");
    if (at("<")) type_arguments();
    auto t = make(NodeKind::Type, "");
    skip_annotations();
    std::string name;
    if (cur().kind == TokenKind::Keyword && primitive_types().count(cur().text)) {
      name = advance().text;
    } else {
      name = ident();
      if (at("<")) type_arguments();
      while (at(".") && peek_tok().kind == TokenKind::Identifier) {
        advance();
        name += "." + ident();
        if (at("<")) type_arguments();
      }
    }
    t->text = name;
    finish(*t);
    if (at("[")) {
      auto n = make_at(NodeKind::NewArray, "", start_line);
      n->add(std::move(t));
      int dims = 0;
      while (at("[")) {
        advance();
        if (at("]")) {
          advance();
        } else {
          n->add(expression());
          expect("]");
        }
        ++dims;
      }
      n->text = std::to_string(dims);
      if (at("{")) n->add(array_initializer());
      finish(*n);
      return n;
    }
    auto n = make_at(NodeKind::New, "", start_line);
    n->add(std::move(t));
    arguments(*n);
    if (at("{")) {
      auto body = make(NodeKind::AnonymousClass, n->child(0).text);
      class_body(*body);
      finish(*body);
      n->add(std::move(body));
    }
    finish(*n);
    return n;
  }

  NodePtr postfix_chain(NodePtr e) {
    for (;;) {
      if (at(".")) {
        advance();
        if (at("<")) type_arguments();
        if (at_kw("new")) {
          // Qualified inner-class creation: outer.new Inner()
          auto inner = creator();
          e = std::move(inner);
          continue;
        }
        if (at_kw("class")) {
          advance();
          auto n = make_at(NodeKind::ClassLiteral, "", e->span.start_line);
          auto t = make_at(NodeKind::Type, flatten_name(*e), e->span.start_line);
          n->add(std::move(t));
          finish(*n);
          e = std::move(n);
          continue;
        }
        if (at_kw("this")) {
          advance();
          auto n = make_at(NodeKind::This, flatten_name(*e) + ".this", e->span.start_line);
          finish(*n);
          e = std::move(n);
          continue;
        }
        std::string name = ident();
        if (at("(")) {
          auto call = make_at(NodeKind::Call, std::move(name), e->span.start_line);
          call->has_receiver = true;
          call->add(std::move(e));
          arguments(*call);
          finish(*call);
          e = std::move(call);
        } else {
          auto fa = make_at(NodeKind::FieldAccess, std::move(name), e->span.start_line);
          fa->add(std::move(e));
          finish(*fa);
          e = std::move(fa);
        }
        continue;
      }
      if (at("[")) {
        advance();
        auto n = make_at(NodeKind::ArrayAccess, "", e->span.start_line);
        n->add(std::move(e));
        n->add(expression());
        expect("]");
        finish(*n);
        e = std::move(n);
        continue;
      }
      if (at("::")) {
        advance();
        auto r = make_at(NodeKind::MethodRef, flatten_name(*e) + "::" +
                                                  (at_kw("new") ? advance().text : ident()),
                         e->span.start_line);
        finish(*r);
        e = std::move(r);
        continue;
      }
      return e;
    }
  }

  static std::string flatten_name(const AstNode& n) {
    if (n.kind == NodeKind::Identifier || n.kind == NodeKind::This) return n.text;
    if (n.kind == NodeKind::FieldAccess && !n.children.empty()) {
      return flatten_name(n.child(0)) + "." + n.text;
    }
    return n.text.empty() ? std::string(kind_name(n.kind)) : n.text;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int last_line_ = 1;
};

}  // namespace

ParseResult parse_file(std::string_view text) {
  ParseResult result;
  try {
    Parser parser(tokenize(text));
    result.ast = parser.compilation_unit();
  } catch (const SyntaxError& e) {
    result.failure = e.failure;
  }
  return result;
}

}  // namespace vfix::java
