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

#include <gtest/gtest.h>

#include <set>

#include "vfix/analysis/lint.hpp"
#include "vfix/common.hpp"
#include "vfix/java/parser.hpp"

namespace vfix::analysis {
namespace {

ViolationCounts lint(const std::string& src,
                     LintConfiguration config = LintConfiguration::Strict) {
  auto r = java::parse_file(src);
  EXPECT_TRUE(r.ok()) << (r.failure ? r.failure->to_string() : "") << "\n" << src;
  return run_rules(r.ast.get(), src, rule_catalog(config));
}

std::string method(const std::string& body) {
  return "class A {\n  void f(int n, String s, Object o) {\n" + body + "\n  }\n}\n";
}

std::string lines(int count, const std::string& line) {
  std::string out;
  for (int i = 0; i < count; ++i) out += line + "\n";
  return out;
}

struct Fixture {
  std::string rule;
  std::string positive;
  std::string negative;
};

std::vector<Fixture> fixtures() {
  std::string many_params = "class A { void f(int a, int b, int c, int d, int e, int f, int g) {} }";
  std::string six_params = "class A { void f(int a, int b, int c, int d, int e, int f) {} }";
  return {
      {"EmptyCatchBlock", method("try { n++; } catch (RuntimeException e) { }"),
       method("try { n++; } catch (RuntimeException e) { n--; }")},
      {"CatchBroadException", method("try { n++; } catch (Exception e) { n--; }"),
       method("try { n++; } catch (IllegalStateException e) { n--; }")},
      {"EmptyIf", method("if (n > 1) { }"), method("if (n > 1) { n--; }")},
      {"EmptyWhile", method("while (n > 1) ;"), method("while (n > 1) { n--; }")},
      {"MissingBracesIf", method("if (n > 1) n--;"),
       method("if (n > 1) { n--; } else if (n < 0) { n++; }")},
      {"MissingSwitchDefault", method("switch (n) { case 1: n++; break; }"),
       method("switch (n) { case 1: n++; break; default: break; }")},
      {"MagicNumber", method("n = n * 37;"), method("int k = 37; n = n * 2 - 1;")},
      {"LongMethod", method(lines(70, "    n++;")), method(lines(10, "    n++;"))},
      {"LongLine", method("    n = n" + std::string(130, ' ') + "+ 1;"),
       method("    n = n + 1;")},
      {"DeepNesting",
       method("if (n > 0) { while (n > 1) { for (;;) { if (n > 2) { if (n > 3) { n--; } } } } }"),
       method("if (n > 0) { while (n > 1) { for (;;) { if (n > 2) { n--; } } } }")},
      {"TooManyParameters", many_params, six_params},
      {"SystemOutPrint", method("System.out.println(s);"), method("log.println(s);")},
      {"PrintStackTrace",
       method("try { n++; } catch (RuntimeException e) { e.printStackTrace(); }"),
       method("try { n++; } catch (RuntimeException e) { e.printStackTrace(System.err); }")},
      {"StringEqualsOperator", method("if (s == \"x\") { n++; }"),
       method("if (\"x\".equals(s)) { n++; }")},
      {"HardcodedSecretString", method("String dbPassword = \"hunter2\";"),
       method("String greeting = \"hello\";")},
      {"EmptyFinally", method("try { n++; } finally { }"),
       method("try { n++; } finally { n--; }")},
      {"ReturnInFinally", method("try { n++; } finally { return; }"),
       method("try { n++; } finally { n--; } return;")},
      {"UnusedPrivateField", "class A { private int unused; int f() { return 1; } }",
       "class A { private int used; int f() { return used; } }"},
      {"SwitchFallthrough", method("switch (n) { case 1: n++; case 2: n--; break; default: }"),
       method("switch (n) { case 1: case 2: n--; break; default: n++; }")},
      {"GodClass", "class A {\n" + lines(520, "  int x;") + "}\n", "class A {\n  int x;\n}\n"},
  };
}

TEST(Lint, CatalogHasTwentyUniqueRules) {
  auto catalog = rule_catalog();
  EXPECT_EQ(catalog.size(), 20u);
  std::set<std::string> ids;
  for (const auto& r : catalog) ids.insert(r.id);
  EXPECT_EQ(ids.size(), 20u);
}

TEST(Lint, StyleConfigurationIsStyleAndSizeOnly) {
  auto style = rule_catalog(LintConfiguration::Style);
  EXPECT_FALSE(style.empty());
  EXPECT_LT(style.size(), 20u);
  for (const auto& r : style) {
    EXPECT_TRUE(r.category == RuleCategory::Style || r.category == RuleCategory::Size) << r.id;
  }
}

TEST(Lint, EveryRuleHasPositiveAndNegativeFixture) {
  auto all = fixtures();
  std::set<std::string> covered;
  for (const auto& f : all) {
    covered.insert(f.rule);
    EXPECT_GE(lint(f.positive).at(f.rule), 1) << f.rule << " positive";
    EXPECT_EQ(lint(f.negative).at(f.rule), 0) << f.rule << " negative";
  }
  for (const auto& r : rule_catalog()) EXPECT_TRUE(covered.count(r.id)) << r.id;
}

TEST(Lint, EmptyClassOnlyZeroCounts) {
  auto counts = lint("class A {}");
  EXPECT_EQ(counts.size(), 20u);
  for (const auto& [id, n] : counts) EXPECT_EQ(n, 0) << id;
}

TEST(Lint, TwoEmptyCatchBlocks) {
  auto counts = lint(method("try { n++; } catch (RuntimeException e) { }\n"
                            "try { n--; } catch (IllegalStateException e) { }"));
  EXPECT_EQ(counts.at("EmptyCatchBlock"), 2);
}

TEST(Lint, ParseFailureRunsTextRulesOnly) {
  std::string src = "class A { void f( }\n" + std::string(250, 'x') + "\n";
  auto r = java::parse_file(src);
  ASSERT_FALSE(r.ok());
  auto counts = run_rules(nullptr, src, rule_catalog());
  EXPECT_GE(counts.at("LongLine"), 1);
  for (const auto& rule : rule_catalog()) {
    if (!rule.text_based) EXPECT_EQ(counts.at(rule.id), 0) << rule.id;
  }
}

TEST(Lint, EmptyCatalogRejected) {
  EXPECT_THROW(run_rules(nullptr, "", {}), ValidationError);
}

TEST(Lint, NormalizeRuleId) {
  EXPECT_EQ(normalize_rule_id("UnusedLocal:fooCounter"), "UnusedLocal");
  EXPECT_EQ(normalize_rule_id("UnusedLocal"), "UnusedLocal");
  EXPECT_EQ(normalize_rule_id("LongLine@17"), "LongLine");
  EXPECT_EQ(normalize_rule_id(normalize_rule_id("MagicNumber:42")), "MagicNumber");
}

TEST(Lint, DistinctNamesCollapseToOneId) {
  auto counts = lint("class A { private int alpha; private int beta; }");
  EXPECT_EQ(counts.at("UnusedPrivateField"), 2);
  auto raw = collect_violations(java::parse_file("class A { private int alpha; private int beta; }")
                                    .ast.get(),
                                "", rule_catalog());
  std::set<std::string> raw_ids;
  for (const auto& v : raw) raw_ids.insert(v.raw_id);
  EXPECT_EQ(raw_ids.size(), 2u);
}

TEST(Lint, WhitespaceInvariantForAstRules) {
  std::string compact = "class A{void f(int n){try{n++;}catch(Exception e){}if(n>1)n=n*37;}}";
  std::string spread =
      "class A {\n\n  void f(int n) {\n    try {\n      n++;\n    }\n    catch (Exception e) {\n"
      "    }\n    if (n > 1)\n      n = n * 37;\n  }\n}\n";
  auto a = lint(compact);
  auto b = lint(spread);
  for (const auto& rule : rule_catalog()) {
    if (!rule.text_based) EXPECT_EQ(a.at(rule.id), b.at(rule.id)) << rule.id;
  }
}

TEST(Lint, Deterministic) {
  auto f = fixtures();
  for (const auto& fx : f) EXPECT_EQ(lint(fx.positive), lint(fx.positive));
}

}  // namespace
}  // namespace vfix::analysis
