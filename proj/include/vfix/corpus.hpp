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

#ifndef VFIX_CORPUS_HPP_
#define VFIX_CORPUS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfix/common.hpp"

namespace vfix {

struct CommitRecord {
  std::string repo_url;
  std::string sha;  // 40 lowercase hex digits
  int label = 0;
  int test_fold = 0;
  std::string message;

  bool operator==(const CommitRecord&) const = default;
};

enum class FileStatus { Modified, Added, Deleted };

std::string_view status_name(FileStatus s);
FileStatus parse_status(std::string_view s);

struct FilePair {
  std::string path;
  FileStatus status = FileStatus::Modified;
  std::optional<std::string> pre_text;
  std::optional<std::string> post_text;

  // Throws ValidationError when texts disagree with the status.
  void validate() const;
  bool operator==(const FilePair&) const = default;
};

struct CommitSnapshot {
  CommitRecord record;
  std::vector<FilePair> files;
};

class UnreachableCommit : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

inline constexpr int kFoldCount = 5;

// Manifest CSV: `repo_url,sha,label,test_fold[,message]`.
std::vector<CommitRecord> load_manifest(const std::filesystem::path& path);
std::vector<CommitRecord> parse_manifest(std::string_view text);
std::string format_manifest(const std::vector<CommitRecord>& records);

// Last URL path component without a trailing `.git`.
std::string repo_name(const std::string& repo_url);

// Stable identifier used for cache directories and embedding rows.
std::string commit_id(const CommitRecord& r);

// Clone directory: `$VFIX_CLONE_ROOT` when set, else `clone_root`, joined
// with repo_name(url).
std::filesystem::path clone_dir(const std::filesystem::path& clone_root, const std::string& url);

// Read-only handle on a local clone, backed by the system git client.
class GitRepo {
 public:
  explicit GitRepo(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // True when `sha` names a commit contained in some ref or in HEAD.
  bool reachable(const std::string& sha) const;
  std::vector<std::string> parents(const std::string& sha) const;
  std::string message(const std::string& sha) const;
  // Every commit reachable from any ref, sorted by sha.
  std::vector<std::string> all_commits() const;

  struct Change {
    std::string path;
    FileStatus status;
  };
  // Changes against the first parent (all-added for root commits). Renames
  // appear as a delete plus an add.
  std::vector<Change> changes(const std::string& sha) const;
  std::string blob(const std::string& rev, const std::string& path) const;

 private:
  std::string git(const std::vector<std::string>& args) const;
  std::filesystem::path dir_;
};

struct SourceFilter {
  std::vector<std::string> extensions{".java"};
  bool matches(const std::string& path) const;
};

// Throws UnreachableCommit when the sha is missing or not contained in any
// ref.
CommitSnapshot resolve_commit(const GitRepo& repo, const CommitRecord& record,
                              const SourceFilter& filter = {});

const std::vector<std::string>& default_security_keywords();

struct NegativeSample {
  std::vector<CommitRecord> records;
  std::size_t requested = 0;
  bool partial() const { return records.size() < requested; }
};

// Draws one label-0 commit per positive from the remaining commits of the
// repository. Eligible commits do not mention any keyword (case-insensitive)
// and change between min_files and max_files source files. The i-th negative
// inherits the fold of the i-th positive.
NegativeSample sample_negatives(const GitRepo& repo, const std::vector<CommitRecord>& positives,
                                const std::vector<std::string>& keywords, std::size_t min_files,
                                std::size_t max_files, std::uint64_t seed,
                                const SourceFilter& filter = {});

// Snapshot cache: `<root>/<commit_id>/{pre,post}/<path>` plus `files.csv`.
void write_snapshot(const std::filesystem::path& cache_root, const CommitSnapshot& snap);
CommitSnapshot read_snapshot(const std::filesystem::path& cache_root, const CommitRecord& record);
bool has_snapshot(const std::filesystem::path& cache_root, const CommitRecord& record);

}  // namespace vfix

#endif  // VFIX_CORPUS_HPP_
