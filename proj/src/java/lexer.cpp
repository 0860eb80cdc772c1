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

#include <array>
#include <cctype>
#include <unordered_set>

#include "vfix/java/parser.hpp"

namespace vfix::java {

namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "abstract", "assert",    "boolean",    "break",     "byte",       "case",
      "catch",    "char",      "class",      "const",     "continue",   "default",
      "do",       "double",    "else",       "enum",      "extends",    "final",
      "finally",  "float",     "for",        "goto",      "if",         "implements",
      "import",   "instanceof", "int",       "interface", "long",       "native",
      "new",      "package",   "private",    "protected", "public",     "return",
      "short",    "static",    "strictfp",   "super",     "switch",     "synchronized",
      "this",     "throw",     "throws",     "transient", "try",        "void",
      "volatile", "while",     "true",       "false",     "null",
  };
  return kw;
}

// Longest-match operator table, `>`-prefixed operators excluded on purpose.
constexpr std::array<std::string_view, 33> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "<<", "(",  ")",
    "{",   "}",   "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",  "?",
};
constexpr std::string_view kSingleOps = ">:!~+-*/&|^%";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.line = line_;
    end.column = col_;
    end.offset = pos_;
    out.push_back(end);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(ParseFailure{line_, col_, msg});
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= text_.size()) fail("unterminated block comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = col_;
    t.offset = pos_;
    const std::size_t start = pos_;
    char c = peek();
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_part(peek())) advance();
      t.text = std::string(text_.substr(start, pos_ - start));
      t.kind = keywords().count(t.text) ? TokenKind::Keyword : TokenKind::Identifier;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      t.kind = number();
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') {
        text_block();
      } else {
        quoted('"');
      }
      t.kind = TokenKind::StringLiteral;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (c == '\'') {
      quoted('\'');
      t.kind = TokenKind::CharLiteral;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    for (auto op : kOperators) {
      if (text_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        t.kind = TokenKind::Operator;
        t.text = std::string(op);
        return t;
      }
    }
    if (kSingleOps.find(c) != std::string_view::npos) {
      advance();
      t.kind = TokenKind::Operator;
      t.text = std::string(1, c);
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  TokenKind number() {
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("malformed hex literal");
      while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      if (peek() != '0' && peek() != '1') fail("malformed binary literal");
      while (peek() == '0' || peek() == '1' || peek() == '_') advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      } else if (peek() == '.' && !ident_start(peek(1)) && peek(1) != '.') {
        // `1.` is a double literal; `1.foo` is not valid Java anyway.
        is_float = true;
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    char s = peek();
    if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
      is_float = true;
      advance();
    } else if (s == 'l' || s == 'L') {
      advance();
    }
    if (ident_part(peek())) fail("malformed numeric literal");
    return is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral;
  }

  void quoted(char q) {
    advance();
    while (pos_ < text_.size() && peek() != q) {
      if (peek() == '\n') fail("unterminated literal");
      if (peek() == '\\') advance();
      if (pos_ < text_.size()) advance();
    }
    if (pos_ >= text_.size()) fail("unterminated literal");
    advance();
  }

  void text_block() {
    for (int i = 0; i < 3; ++i) advance();
    while (pos_ < text_.size() && !(peek() == '"' && peek(1) == '"' && peek(2) == '"')) {
      if (peek() == '\\') advance();
      if (pos_ < text_.size()) advance();
    }
    if (pos_ >= text_.size()) fail("unterminated text block");
    for (int i = 0; i < 3; ++i) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string ParseFailure::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace vfix::java
