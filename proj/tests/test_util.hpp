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

#ifndef VFIX_TESTS_TEST_UTIL_HPP_
#define VFIX_TESTS_TEST_UTIL_HPP_

#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "vfix/csv.hpp"
#include "vfix/process.hpp"

namespace vfix::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("vfix_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Minimal scripted git repository with deterministic commit metadata.
class FixtureRepo {
 public:
  explicit FixtureRepo(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    git({"init", "-q", "-b", "main"});
  }

  std::string git(const std::vector<std::string>& args) {
    std::vector<std::string> argv = {"git", "-C", dir_.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    auto r = run_process(argv, {},
                         {{"GIT_AUTHOR_NAME", "t"}, {"GIT_AUTHOR_EMAIL", "t@example.com"},
                          {"GIT_COMMITTER_NAME", "t"}, {"GIT_COMMITTER_EMAIL", "t@example.com"},
                          {"GIT_AUTHOR_DATE", "2020-01-01T00:00:00Z"},
                          {"GIT_COMMITTER_DATE", "2020-01-01T00:00:00Z"}});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    return r.out;
  }

  void write(const std::string& path, const std::string& text) {
    write_file_if_changed(dir_ / path, text);
    git({"add", "--", path});
  }
  void remove(const std::string& path) { git({"rm", "-q", "--", path}); }

  std::string commit(const std::string& message) {
    git({"commit", "-q", "--allow-empty", "-m", message});
    std::string sha = git({"rev-parse", "HEAD"});
    sha.pop_back();
    return sha;
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace vfix::testing

#endif  // VFIX_TESTS_TEST_UTIL_HPP_
