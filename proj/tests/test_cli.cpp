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

#include <sstream>

#include "test_util.hpp"
#include "vfix/analysis/lint.hpp"
#include "vfix/cli.hpp"
#include "vfix/java/parser.hpp"
#include "vfix/synth.hpp"

namespace vfix::cli {
namespace {

namespace fs = std::filesystem;
using testing::FixtureRepo;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run vfix(std::vector<std::string> args) {
  args.insert(args.begin(), "vfix");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Config, ParsesKeysCommentsAndQuotes) {
  auto c = parse_config(
      "# comment\n"
      "manifest = data/m.csv\n"
      "analyzers = graph, lint\n"
      "alpha=0.01\n"
      "\n"
      "workdir = \"out dir\"\n"
      "prune_per_fold = true\n"
      "seed = 7\n");
  EXPECT_EQ(c.manifest, "data/m.csv");
  EXPECT_EQ(c.workdir, "out dir");
  EXPECT_EQ(c.analyzers, (std::vector<Analyzer>{Analyzer::Lint, Analyzer::Graph}));
  EXPECT_DOUBLE_EQ(c.alpha, 0.01);
  EXPECT_TRUE(c.prune_per_fold);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.n_iter, 200);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("colour = red\n"), ValidationError);
  EXPECT_THROW(parse_config("just words\n"), ValidationError);
  EXPECT_THROW(parse_config("jobs = 1.5\n"), ValidationError);
  EXPECT_THROW(parse_config("analyzers = lint,pmd\n"), ValidationError);
  EXPECT_THROW(parse_config("alpha = 2\n").validate(), ValidationError);
  EXPECT_THROW(parse_config("folds = random\n").validate(), ValidationError);
  EXPECT_THROW(parse_config("n_iter = 0\n").validate(), ValidationError);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(vfix({}).code, 1);
  EXPECT_EQ(vfix({"bogus"}).code, 1);
  EXPECT_EQ(vfix({"train", "--n-iter", "abc"}).code, 1);
  EXPECT_EQ(vfix({"--help"}).code, 0);
}

TEST(Cli, MissingUpstreamArtifactNamesTheProducer) {
  TempDir tmp("cli_missing");
  auto r = vfix({"train", "--workdir", tmp.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("embedding_lint.csv"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("vfix embed"), std::string::npos) << r.err;
  r = vfix({"embed", "--workdir", tmp.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("vfix ingest"), std::string::npos) << r.err;
  r = vfix({"report", "--workdir", tmp.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("vfix train"), std::string::npos) << r.err;
}

TEST(Cli, FlagsOverrideConfigFile) {
  TempDir tmp("cli_conf");
  write_file_if_changed(tmp.path() / "c.conf", "workdir = " + (tmp.path() / "nowhere").string() + "\n");
  auto r = vfix({"report", "--config", (tmp.path() / "c.conf").string()});
  EXPECT_NE(r.err.find("nowhere"), std::string::npos);
  r = vfix({"report", "--config", (tmp.path() / "c.conf").string(), "--workdir",
            (tmp.path() / "elsewhere").string()});
  EXPECT_NE(r.err.find("elsewhere"), std::string::npos);
  write_file_if_changed(tmp.path() / "bad.conf", "colour = red\n");
  EXPECT_EQ(vfix({"report", "--config", (tmp.path() / "bad.conf").string()}).code, 1);
}

TEST(Cli, BinaryExitCodes) {
  auto r = run_process({VFIX_CLI_PATH, "rules", "list", "--style"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("id,category,threshold,text_based,description\n", 0), 0u);
  r = run_process({VFIX_CLI_PATH, "train", "--workdir", "/nonexistent/vfix"});
  EXPECT_EQ(r.exit_code, 1);
}

TEST(Cli, RulesListMatchesCatalog) {
  auto strict = vfix({"rules", "list"});
  auto style = vfix({"rules", "list", "--style"});
  ASSERT_EQ(strict.code, 0);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n') - 1; };
  EXPECT_EQ(lines(strict.out),
            static_cast<long>(analysis::rule_catalog(analysis::LintConfiguration::Strict).size()));
  EXPECT_EQ(lines(style.out),
            static_cast<long>(analysis::rule_catalog(analysis::LintConfiguration::Style).size()));
}

TEST(Cli, MetricsDump) {
  TempDir tmp("cli_metrics");
  write_file_if_changed(tmp.path() / "A.java",
                        "class A { int x; int f() { if (x > 0) return 1; return 0; } }\n");
  write_file_if_changed(tmp.path() / "Bad.java", "class {\n");
  auto r = vfix({"metrics", "dump", (tmp.path() / "A.java").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_NE(r.out.find(",A,class,"), std::string::npos) << r.out;
  r = vfix({"metrics", "dump", (tmp.path() / "Bad.java").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(vfix({"metrics", "dump", (tmp.path() / "Missing.java").string()}).code, 1);
}

TEST(Cli, IngestClassifiesEveryCommit) {
  TempDir tmp("cli_ingest");
  FixtureRepo repo(tmp.path() / "clones" / "app");
  repo.write("src/A.java", "class A { void f() {} }\n");
  std::string good = repo.commit("add A");
  repo.write("README.md", "docs\n");
  std::string docs = repo.commit("docs only");
  repo.write("src/B.java", "class B {}\n");
  repo.write("src/C.java", "class C {}\n");
  repo.write("src/D.java", "class D {}\n");
  std::string big = repo.commit("three files");
  std::string ghost(40, 'a');

  std::string manifest = "repo_url,sha,label,test_fold\n";
  manifest += "https://example.com/x/app.git," + good + ",1,0\n";
  manifest += "https://example.com/x/app.git," + docs + ",0,1\n";
  manifest += "https://example.com/x/app.git," + big + ",1,2\n";
  manifest += "https://example.com/x/app.git," + ghost + ",0,3\n";
  manifest += "https://example.com/x/gone.git," + good + ",1,4\n";
  write_file_if_changed(tmp.path() / "manifest.csv", manifest);
  std::vector<std::string> common = {"--manifest", (tmp.path() / "manifest.csv").string(), "--clone-root",
                                     (tmp.path() / "clones").string(), "--workdir",
                                     (tmp.path() / "w").string(), "--max-files", "2"};
  auto args = common;
  args.insert(args.begin(), "ingest");
  auto r = vfix(args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("gone"), std::string::npos);

  auto report = csv::parse(read_file(tmp.path() / "w" / "ingest_report.csv"));
  ASSERT_EQ(report.size(), 6u);
  std::vector<std::string> reasons;
  for (std::size_t i = 1; i < report.size(); ++i) reasons.push_back(report[i][3] + ":" + report[i][4]);
  EXPECT_EQ(reasons, (std::vector<std::string>{"included:resolved", "excluded:empty", "excluded:oversized",
                                               "excluded:unreachable", "excluded:missing_clone"}));
  auto included = parse_manifest(read_file(tmp.path() / "w" / "ingested.csv"));
  ASSERT_EQ(included.size(), 1u);
  EXPECT_EQ(included[0].sha, good);

  // A second run reuses the cache.
  r = vfix(args);
  report = csv::parse(read_file(tmp.path() / "w" / "ingest_report.csv"));
  EXPECT_EQ(report[1][4], "cached");

  args[0] = "embed";
  r = vfix(args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(tmp.path() / "w" / "embeddings" / "embedding_graph.csv"));
}

TEST(Cli, IngestSamplesNegatives) {
  TempDir tmp("cli_negatives");
  FixtureRepo repo(tmp.path() / "clones" / "app");
  std::string fix;
  for (int i = 0; i < 6; ++i) {
    repo.write("src/A" + std::to_string(i) + ".java", "class A" + std::to_string(i) + " {}\n");
    std::string sha = repo.commit(i == 3 ? "fix security hole" : "change " + std::to_string(i));
    if (i == 3) fix = sha;
  }
  write_file_if_changed(tmp.path() / "manifest.csv",
                        "repo_url,sha,label,test_fold\nhttps://example.com/app.git," + fix + ",1,2\n");
  auto r = vfix({"ingest", "--sample-negatives", "--manifest", (tmp.path() / "manifest.csv").string(),
                 "--clone-root", (tmp.path() / "clones").string(), "--workdir", (tmp.path() / "w").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto included = parse_manifest(read_file(tmp.path() / "w" / "ingested.csv"));
  ASSERT_EQ(included.size(), 2u);
  EXPECT_EQ(included[1].label, 0);
  EXPECT_EQ(included[1].test_fold, 2);
  EXPECT_NE(included[1].sha, fix);
}

TEST(Synth, SameSeedSameCorpus) {
  TempDir a("synth_a"), b("synth_b");
  synth::Options opt;
  opt.n = 20;
  opt.seed = 5;
  auto ca = synth::generate(a.path(), opt);
  auto cb = synth::generate(b.path(), opt);
  EXPECT_EQ(ca.manifest, cb.manifest);
  ASSERT_EQ(ca.manifest.size(), 20u);
  EXPECT_EQ(std::count_if(ca.manifest.begin(), ca.manifest.end(), [](auto& r) { return r.label == 1; }), 10);
  auto again = synth::generate(a.path(), opt);
  EXPECT_EQ(again.manifest, ca.manifest);
  opt.seed = 6;
  EXPECT_NE(synth::generate(b.path(), opt).manifest, ca.manifest);
  EXPECT_THROW(synth::parse_signal("loud"), ValidationError);
  EXPECT_DOUBLE_EQ(synth::parse_signal("none"), 0.0);
  EXPECT_DOUBLE_EQ(synth::parse_signal("0.3"), 0.3);
}

TEST(Synth, GeneratedJavaParses) {
  TempDir tmp("synth_parse");
  synth::Options opt;
  opt.n = 20;
  auto corpus = synth::generate(tmp.path(), opt);
  GitRepo repo(corpus.repo);
  std::size_t checked = 0;
  for (const auto& rec : corpus.manifest) {
    auto snap = resolve_commit(repo, rec);
    EXPECT_FALSE(snap.files.empty());
    for (const auto& f : snap.files) {
      for (const auto* text : {&f.pre_text, &f.post_text}) {
        if (!text->has_value()) continue;
        auto parsed = java::parse_file(**text);
        EXPECT_TRUE(parsed.ok()) << f.path << ": " << parsed.failure->to_string();
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 20u);
}

TEST(Cli, PipelineIsDeterministic) {
  TempDir tmp("cli_e2e");
  auto run = [&](const std::string& name) {
    fs::path dir = tmp.path() / name;
    EXPECT_EQ(vfix({"synth", "--n", "40", "--seed", "3", "--out", dir.string()}).code, 0);
    std::string conf = (dir / "vfix.conf").string();
    for (const char* step : {"ingest", "embed", "stats"}) {
      auto r = vfix({step, "--config", conf});
      EXPECT_EQ(r.code, 0) << step << ": " << r.err;
    }
    auto r = vfix({"train", "--config", conf, "--n-iter", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    r = vfix({"report", "--config", conf});
    EXPECT_EQ(r.code, 0) << r.err;
    r = vfix({"evaluate", "--config", conf});
    EXPECT_EQ(r.code, 0) << r.err;
    return dir;
  };
  fs::path a = run("a"), b = run("b");
  for (const char* f : {"run/report.json", "run/models/ensemble.model", "run/models/lint.model",
                        "run/predictions.csv", "run/evaluation.csv", "run/pr/pr_voting.csv",
                        "stats/association_graph.csv", "embeddings/embedding_metrics.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  }
  auto eval = csv::parse(read_file(a / "run/evaluation.csv"));
  EXPECT_EQ(eval.size(), 7u);
}

}  // namespace
}  // namespace vfix::cli
