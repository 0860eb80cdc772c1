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

// Random Java sources and commits for embedding property checks.
#ifndef VFIX_TESTS_RANDOM_COMMITS_HPP_
#define VFIX_TESTS_RANDOM_COMMITS_HPP_

#include <string>
#include <vector>

#include "vfix/corpus.hpp"
#include "vfix/random.hpp"

namespace vfix::testing {

inline std::string random_statement(Rng& rng, int depth) {
  const std::string v = "v" + std::to_string(rng.below(3));
  const std::string n = std::to_string(rng.below(2000));
  switch (depth > 2 ? rng.below(4) : rng.below(9)) {
    case 0:
      return v + " = " + v + " + " + n + ";";
    case 1:
      return "System.out.println(\"x\" + " + v + ");";
    case 2:
      return "if (s == \"k" + n + "\") return " + n + ";";
    case 3:
      return "String key = \"secret" + n + "\";";
    case 4:
      return "if (" + v + " > " + n + ") { " + random_statement(rng, depth + 1) + " } else { " +
             random_statement(rng, depth + 1) + " }";
    case 5:
      return "for (int i = 0; i < " + n + "; i++) { " + random_statement(rng, depth + 1) + " }";
    case 6:
      return "while (" + v + " < " + n + ") { " + v + "++; }";
    case 7:
      return rng.below(2) ? "try { " + random_statement(rng, depth + 1) + " } catch (Exception e) { }"
                          : "try { " + random_statement(rng, depth + 1) +
                                " } catch (IllegalStateException e) { throw e; }";
    default:
      return "if (s != null) " + v + " = " + v + " * 2;";
  }
}

inline std::string random_java(Rng& rng, const std::string& name) {
  std::string s = "package app;\n\npublic class " + name + " {\n";
  s += "  private int v0;\n  private int v1 = " + std::to_string(rng.below(100)) + ";\n  private int v2;\n";
  const auto methods = 1 + rng.below(4);
  for (std::size_t m = 0; m < methods; ++m) {
    s += "  public int m" + std::to_string(m) + "(String s) {\n";
    const auto stmts = rng.below(6);
    for (std::size_t i = 0; i < stmts; ++i) s += "    " + random_statement(rng, 0) + "\n";
    s += "    return v0;\n  }\n";
  }
  return s + "}\n";
}

// One to four files; each is added, deleted or modified, and now and then a
// version falls outside the parser subset.
inline CommitSnapshot random_commit(Rng& rng) {
  CommitSnapshot snap;
  const auto files = 1 + rng.below(4);
  for (std::size_t f = 0; f < files; ++f) {
    FilePair p;
    const std::string name = "C" + std::to_string(f);
    p.path = "src/" + name + ".java";
    auto kind = rng.below(5);
    auto text = [&] {
      auto t = random_java(rng, name);
      if (rng.below(20) == 0) t += "class Broken {";
      return t;
    };
    if (kind == 0) {
      p.status = FileStatus::Added;
      p.post_text = text();
    } else if (kind == 1) {
      p.status = FileStatus::Deleted;
      p.pre_text = text();
    } else {
      p.status = FileStatus::Modified;
      p.pre_text = text();
      p.post_text = text();
    }
    snap.files.push_back(std::move(p));
  }
  return snap;
}

}  // namespace vfix::testing

#endif  // VFIX_TESTS_RANDOM_COMMITS_HPP_
