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

#include <algorithm>
#include <set>

#include "test_util.hpp"
#include "vfix/corpus.hpp"

namespace vfix {
namespace {

using testing::FixtureRepo;
using testing::TempDir;

const std::string kSha(40, 'a');

TEST(Manifest, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_manifest("repo_url,sha,label,test_fold\n").empty());
}

TEST(Manifest, FieldMapping) {
  auto recs = parse_manifest("repo_url,sha,label,test_fold\nhttps://r.git," + kSha + ",1,3\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].repo_url, "https://r.git");
  EXPECT_EQ(recs[0].sha, kSha);
  EXPECT_EQ(recs[0].label, 1);
  EXPECT_EQ(recs[0].test_fold, 3);
}

TEST(Manifest, Errors) {
  const std::string h = "repo_url,sha,label,test_fold\n";
  EXPECT_THROW(parse_manifest(h + "u," + kSha + ",1,3\nu," + kSha + ",0,1\n"), ValidationError);
  EXPECT_THROW(parse_manifest(h + "u," + kSha + ",1,7\n"), ValidationError);
  EXPECT_THROW(parse_manifest(h + "u,xyz,1,1\n"), ValidationError);
  EXPECT_THROW(parse_manifest(h + "u," + kSha + ",2,1\n"), ValidationError);
  EXPECT_THROW(parse_manifest("repo,sha\n"), ValidationError);
  try {
    parse_manifest(h + "u," + kSha + ",1,x\n");
    FAIL();
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("test_fold"), std::string::npos) << msg;
  }
}

TEST(Manifest, RoundTrip) {
  std::vector<CommitRecord> recs = {{"https://x/r.git", kSha, 1, 0, "fix, \"quoted\""},
                                    {"https://x/r.git", std::string(40, 'b'), 0, 4, ""}};
  EXPECT_EQ(parse_manifest(format_manifest(recs)), recs);
}

TEST(Corpus, RepoNameAndCloneDir) {
  EXPECT_EQ(repo_name("https://github.com/org/proj.git"), "proj");
  EXPECT_EQ(repo_name("git@host:org/proj"), "proj");
  EXPECT_EQ(repo_name("/tmp/x/proj/"), "proj");
  unsetenv("VFIX_CLONE_ROOT");
  EXPECT_EQ(clone_dir("/c", "https://h/o/proj.git"), std::filesystem::path("/c/proj"));
  setenv("VFIX_CLONE_ROOT", "/override", 1);
  EXPECT_EQ(clone_dir("/c", "https://h/o/proj.git"), std::filesystem::path("/override/proj"));
  unsetenv("VFIX_CLONE_ROOT");
}

TEST(Corpus, ResolveAddedModifiedDeleted) {
  TempDir tmp("resolve");
  FixtureRepo repo(tmp.path() / "proj");
  repo.write("B.java", "class B {}\n");
  repo.write("C.java", "class C {}\n");
  std::string root = repo.commit("initial");
  repo.write("A.java", "class A {}\n");
  repo.write("B.java", "class B { int x; }\n");
  repo.remove("C.java");
  repo.write("README.md", "docs\n");
  std::string sha = repo.commit("change");

  GitRepo g(repo.dir());
  CommitRecord rec{"file:///proj", sha, 1, 0, ""};
  auto snap = resolve_commit(g, rec);
  ASSERT_EQ(snap.files.size(), 3u);
  EXPECT_EQ(snap.files[0].path, "A.java");
  EXPECT_EQ(snap.files[0].status, FileStatus::Added);
  EXPECT_FALSE(snap.files[0].pre_text);
  EXPECT_EQ(*snap.files[0].post_text, "class A {}\n");
  EXPECT_EQ(snap.files[1].status, FileStatus::Modified);
  EXPECT_EQ(*snap.files[1].pre_text, "class B {}\n");
  EXPECT_EQ(*snap.files[1].post_text, "class B { int x; }\n");
  EXPECT_EQ(snap.files[2].status, FileStatus::Deleted);
  EXPECT_FALSE(snap.files[2].post_text);
  for (const auto& f : snap.files) f.validate();

  // Determinism.
  auto again = resolve_commit(g, rec);
  EXPECT_EQ(again.files, snap.files);

  // Root commit: everything is added.
  auto first = resolve_commit(g, {"file:///proj", root, 0, 0, ""});
  ASSERT_EQ(first.files.size(), 2u);
  for (const auto& f : first.files) EXPECT_EQ(f.status, FileStatus::Added);
}

TEST(Corpus, NonSourceOnlyCommitIsEmpty) {
  TempDir tmp("readme");
  FixtureRepo repo(tmp.path() / "proj");
  repo.write("A.java", "class A {}\n");
  repo.commit("one");
  repo.write("README.md", "x\n");
  std::string sha = repo.commit("docs");
  auto snap = resolve_commit(GitRepo(repo.dir()), {"u", sha, 0, 0, ""});
  EXPECT_TRUE(snap.files.empty());
}

TEST(Corpus, DeletedBranchIsUnreachable) {
  TempDir tmp("unreach");
  FixtureRepo repo(tmp.path() / "proj");
  repo.write("A.java", "class A {}\n");
  repo.commit("one");
  repo.git({"checkout", "-q", "-b", "side"});
  repo.write("A.java", "class A { int y; }\n");
  std::string lost = repo.commit("side work");
  repo.git({"checkout", "-q", "main"});
  repo.git({"branch", "-q", "-D", "side"});
  GitRepo g(repo.dir());
  EXPECT_FALSE(g.reachable(lost));
  EXPECT_THROW(resolve_commit(g, {"u", lost, 1, 0, ""}), UnreachableCommit);
  EXPECT_THROW(resolve_commit(g, {"u", std::string(40, 'f'), 1, 0, ""}), UnreachableCommit);
}

TEST(Corpus, SampleNegatives) {
  TempDir tmp("neg");
  FixtureRepo repo(tmp.path() / "proj");
  std::vector<std::string> shas;
  for (int i = 0; i < 10; ++i) {
    repo.write("F" + std::to_string(i) + ".java", "class F" + std::to_string(i) + " {}\n");
    std::string msg = i == 4 ? "Fix security hole" : "change " + std::to_string(i);
    shas.push_back(repo.commit(msg));
  }
  std::vector<CommitRecord> pos = {{"u", shas[1], 1, 2, ""}, {"u", shas[7], 1, 3, ""}};
  GitRepo g(repo.dir());
  auto s = sample_negatives(g, pos, {"security"}, 1, 100, 42);
  ASSERT_EQ(s.records.size(), 2u);
  EXPECT_FALSE(s.partial());
  std::set<std::string> eligible;
  for (int i = 0; i < 10; ++i) {
    if (i != 1 && i != 7 && i != 4) eligible.insert(shas[static_cast<std::size_t>(i)]);
  }
  EXPECT_EQ(eligible.size(), 7u);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    EXPECT_TRUE(eligible.count(s.records[i].sha));
    EXPECT_EQ(s.records[i].label, 0);
    EXPECT_EQ(s.records[i].test_fold, pos[i].test_fold);
  }
  EXPECT_NE(s.records[0].sha, s.records[1].sha);
  auto again = sample_negatives(g, pos, {"security"}, 1, 100, 42);
  EXPECT_EQ(again.records, s.records);

  auto none = sample_negatives(g, pos, {"change", "security", "initial"}, 1, 100, 1);
  EXPECT_TRUE(none.partial());
  EXPECT_EQ(none.records.size(), 0u);
}

TEST(Corpus, SnapshotCacheRoundTrip) {
  TempDir tmp("cache");
  CommitSnapshot snap;
  snap.record = {"https://h/proj.git", kSha, 1, 2, ""};
  snap.files.push_back({"src/A.java", FileStatus::Added, std::nullopt, "class A {}"});
  snap.files.push_back({"src/B.java", FileStatus::Modified, "class B {}", "class B { }"});
  snap.files.push_back({"C.java", FileStatus::Deleted, "class C {}", std::nullopt});
  EXPECT_FALSE(has_snapshot(tmp.path(), snap.record));
  write_snapshot(tmp.path(), snap);
  EXPECT_TRUE(has_snapshot(tmp.path(), snap.record));
  auto back = read_snapshot(tmp.path(), snap.record);
  EXPECT_EQ(back.files, snap.files);
}

}  // namespace
}  // namespace vfix
