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

#include "vfix/analysis/class_metrics.hpp"
#include "vfix/java/parser.hpp"

namespace vfix::analysis {
namespace {

std::vector<ClassMetricsRow> rows_of(const std::string& src) {
  auto r = java::parse_file(src);
  EXPECT_TRUE(r.ok()) << (r.failure ? r.failure->to_string() : "");
  return class_metrics(*r.ast, "A.java");
}

double metric(const ClassMetricsRow& row, const std::string& name) {
  const auto& names = class_metric_names();
  auto it = std::find(names.begin(), names.end(), name);
  EXPECT_NE(it, names.end()) << name;
  return row.metrics.at(static_cast<std::size_t>(it - names.begin()));
}

TEST(ClassMetrics, EighteenMetrics) { EXPECT_EQ(class_metric_names().size(), 18u); }

TEST(ClassMetrics, EmptyClass) {
  auto rows = rows_of("class A {}");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(metric(rows[0], "wmc"), 0);
  EXPECT_EQ(metric(rows[0], "method_count"), 0);
  EXPECT_EQ(metric(rows[0], "dit"), 1);
  EXPECT_EQ(metric(rows[0], "loc"), 1);
  EXPECT_EQ(rows[0].class_type, ClassType::Class);
}

TEST(ClassMetrics, WmcTwoMethodsOneIfEach) {
  auto rows = rows_of("class A { void f(int x){ if (x > 0) { x++; } } "
                      "void g(int y){ if (y > 0) { y--; } } }");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(metric(rows[0], "wmc"), 4);
  EXPECT_EQ(metric(rows[0], "method_count"), 2);
  EXPECT_EQ(metric(rows[0], "comparison_count"), 2);
}

TEST(ClassMetrics, CyclomaticCountsShortCircuitAndCases) {
  auto r = java::parse_file(
      "class A { int f(int x){ if (x > 0 && x < 9 || x == 20) { return 1; } "
      "switch (x) { case 1: return 2; case 2: return 3; default: return x > 5 ? 4 : 5; } } }");
  ASSERT_TRUE(r.ok());
  const auto& m = r.ast->child(0).child(0);
  // if, &&, ||, 2 cases, ?: => 6 decisions
  EXPECT_EQ(cyclomatic_complexity(m), 7);
}

TEST(ClassMetrics, LcomSingleMethodIsZero) {
  auto rows = rows_of("class A { int a; int b; int c; int f(){ return a; } }");
  EXPECT_EQ(metric(rows[0], "lcom"), 0);
  EXPECT_EQ(metric(rows[0], "field_count"), 3);
}

TEST(ClassMetrics, LcomPairs) {
  // f,g share a; h uses c only => pairs (f,h), (g,h) share nothing.
  auto rows = rows_of("class A { int a; int b; int c; int f(){ return a; } "
                      "int g(){ return this.a + b; } int h(){ return c; } }");
  EXPECT_EQ(metric(rows[0], "lcom"), 2);
}

TEST(ClassMetrics, DitWithinFile) {
  auto rows = rows_of("class A {} class B extends A {} class C extends B {} class D extends Ext {}");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(metric(rows[0], "dit"), 1);
  EXPECT_EQ(metric(rows[1], "dit"), 2);
  EXPECT_EQ(metric(rows[2], "dit"), 3);
  EXPECT_EQ(metric(rows[3], "dit"), 1);
}

TEST(ClassMetrics, CboRfcAndCounts) {
  auto rows = rows_of(R"java(
class A {
  private Helper helper;
  static int twice(int v) { return v * 2; }
  String run(Request req, java.util.List<String> names) throws java.io.IOException {
    Response r = helper.handle(req);
    int total = 0;
    for (String n : names) { total += n.length(); }
    try { helper.flush(); } catch (RuntimeException e) { total = total - 1; }
    while (total > 10) { total--; }
    return "x" + r.body() + 3.5;
  }
}
)java");
  ASSERT_EQ(rows.size(), 1u);
  const auto& row = rows[0];
  EXPECT_EQ(metric(row, "cbo"), 3);  // Helper, Request, Response
  EXPECT_EQ(metric(row, "rfc"), 2 + 4);  // handle, length, flush, body
  EXPECT_EQ(metric(row, "static_method_count"), 1);
  EXPECT_EQ(metric(row, "return_count"), 2);
  EXPECT_EQ(metric(row, "loop_count"), 2);
  EXPECT_EQ(metric(row, "try_count"), 1);
  EXPECT_EQ(metric(row, "string_literal_count"), 1);
  EXPECT_EQ(metric(row, "number_literal_count"), 5);
  EXPECT_EQ(metric(row, "variable_count"), 3);
  EXPECT_EQ(metric(row, "math_op_count"), 5);
  EXPECT_EQ(metric(row, "max_nesting"), 1);
}

TEST(ClassMetrics, NestedAndAnonymousRows) {
  auto rows = rows_of(R"java(
class Outer {
  void f() { Runnable r = new Runnable() { public void run() { g(); } }; }
  void g() {}
  interface Inner { void h(); }
}
)java");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].class_name, "Outer");
  EXPECT_EQ(metric(rows[0], "method_count"), 2);
  EXPECT_EQ(rows[1].class_type, ClassType::Anonymous);
  EXPECT_EQ(metric(rows[1], "method_count"), 1);
  EXPECT_EQ(rows[2].class_type, ClassType::Interface);
  EXPECT_EQ(metric(rows[2], "wmc"), 1);
}

TEST(ClassMetrics, InvariantsOnRichFile) {
  auto rows = rows_of(R"java(
class A extends B {
  int x; int[] y;
  A() { x = 0; }
  int f(int a) { if (a > x) { for (int i = 0; i < a; i++) { x += i; } } return x; }
  static void g() { try { new A(); } catch (Exception e) { } }
}
class B { void h() { do { } while (false); } }
)java");
  for (const auto& row : rows) {
    for (double v : row.metrics) EXPECT_GE(v, 0);
    EXPECT_GE(metric(row, "loc"), 1);
    EXPECT_GE(metric(row, "wmc"), metric(row, "method_count"));
  }
}

TEST(FileMetricsVector, SumAndAdditivity) {
  auto rows = rows_of("class A { void a(){} void b(){} } class B { void c(){} void d(){} void e(){} }");
  ASSERT_EQ(rows.size(), 2u);
  auto v = file_metrics_vector(rows);
  EXPECT_EQ(v.at("method_count"), 5);
  auto first = file_metrics_vector({rows[0]});
  auto second = file_metrics_vector({rows[1]});
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v.values[i], first.values[i] + second.values[i]);
  }
  EXPECT_EQ(first.values, rows[0].metrics);
}

TEST(FileMetricsVector, EmptyIsZero) {
  auto v = file_metrics_vector({});
  EXPECT_EQ(v.size(), 18u);
  for (double x : v.values) EXPECT_EQ(x, 0);
}

}  // namespace
}  // namespace vfix::analysis
