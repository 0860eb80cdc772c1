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

#ifndef VFIX_JAVA_PARSER_HPP_
#define VFIX_JAVA_PARSER_HPP_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vfix/java/ast.hpp"

namespace vfix::java {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  Operator,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

struct ParseFailure {
  int line = 0;
  int column = 0;
  std::string message;

  std::string to_string() const;
};

class SyntaxError : public std::runtime_error {
 public:
  explicit SyntaxError(ParseFailure f) : std::runtime_error(f.to_string()), failure(std::move(f)) {}
  ParseFailure failure;
};

// Comments are dropped. `>` is always emitted as a single-character token so
// that nested generic closers need no splitting; the expression parser joins
// adjacent `>` `>` / `>` `=` into shift and comparison operators.
// Throws SyntaxError on malformed literals or stray characters.
std::vector<Token> tokenize(std::string_view text);

// Exactly one of `ast` / `failure` is set.
struct ParseResult {
  std::unique_ptr<AstNode> ast;
  std::optional<ParseFailure> failure;

  bool ok() const { return ast != nullptr; }
};

// Parses the supported Java subset. Input outside the subset yields a
// ParseFailure value carrying the position of the first offending token.
ParseResult parse_file(std::string_view text);

// Renders an AST back to Java source in the subset. Re-parsing the output
// yields the same node-kind sequence.
std::string print_java(const AstNode& root);

}  // namespace vfix::java

#endif  // VFIX_JAVA_PARSER_HPP_
