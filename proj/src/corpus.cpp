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

#include "vfix/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>

#include "vfix/csv.hpp"
#include "vfix/process.hpp"
#include "vfix/random.hpp"

namespace vfix {

namespace fs = std::filesystem;

std::string_view status_name(FileStatus s) {
  switch (s) {
    case FileStatus::Modified:
      return "modified";
    case FileStatus::Added:
      return "added";
    case FileStatus::Deleted:
      return "deleted";
  }
  return "modified";
}

FileStatus parse_status(std::string_view s) {
  if (s == "modified") return FileStatus::Modified;
  if (s == "added") return FileStatus::Added;
  if (s == "deleted") return FileStatus::Deleted;
  throw ValidationError("unknown file status '" + std::string(s) + "'");
}

void FilePair::validate() const {
  bool ok = false;
  switch (status) {
    case FileStatus::Added:
      ok = !pre_text && post_text;
      break;
    case FileStatus::Deleted:
      ok = pre_text && !post_text;
      break;
    case FileStatus::Modified:
      ok = pre_text && post_text && *pre_text != *post_text;
      break;
  }
  if (!ok) throw ValidationError("file pair '" + path + "' does not match its status");
}

namespace {

bool is_hex_sha(const std::string& s) {
  return s.size() == 40 && std::all_of(s.begin(), s.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'f');
         });
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int parse_int_field(const std::string& v, std::size_t row, const char* column) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ValidationError("manifest row " + std::to_string(row) + ", column " + column +
                          ": not an integer: '" + v + "'");
  }
  return out;
}

}  // namespace

std::vector<CommitRecord> parse_manifest(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw ValidationError("manifest: missing header row");
  const csv::Row& header = rows[0];
  const csv::Row expected = {"repo_url", "sha", "label", "test_fold"};
  bool header_ok = (header.size() == 4 || header.size() == 5) &&
                   std::equal(expected.begin(), expected.end(), header.begin()) &&
                   (header.size() == 4 || header[4] == "message");
  if (!header_ok) {
    throw ValidationError("manifest: header must be repo_url,sha,label,test_fold[,message]");
  }
  std::vector<CommitRecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& r = rows[i];
    const std::size_t row_no = i + 1;
    if (r.size() != header.size()) {
      throw ValidationError("manifest row " + std::to_string(row_no) + ": expected " +
                            std::to_string(header.size()) + " columns, found " +
                            std::to_string(r.size()));
    }
    CommitRecord rec;
    rec.repo_url = r[0];
    if (rec.repo_url.empty()) {
      throw ValidationError("manifest row " + std::to_string(row_no) + ", column repo_url: empty");
    }
    rec.sha = lower(r[1]);
    if (!is_hex_sha(rec.sha)) {
      throw ValidationError("manifest row " + std::to_string(row_no) +
                            ", column sha: not a 40-digit hex object id");
    }
    rec.label = parse_int_field(r[2], row_no, "label");
    if (rec.label != 0 && rec.label != 1) {
      throw ValidationError("manifest row " + std::to_string(row_no) + ", column label: must be 0 or 1");
    }
    rec.test_fold = parse_int_field(r[3], row_no, "test_fold");
    if (rec.test_fold < 0 || rec.test_fold >= kFoldCount) {
      throw ValidationError("manifest row " + std::to_string(row_no) +
                            ", column test_fold: unknown fold " + r[3]);
    }
    if (r.size() == 5) rec.message = r[4];
    if (!seen.insert({rec.repo_url, rec.sha}).second) {
      throw ValidationError("manifest row " + std::to_string(row_no) + ": duplicate (repo_url, sha)");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CommitRecord> load_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw ValidationError("manifest not found: " + path.string());
  return parse_manifest(read_file(path));
}

std::string format_manifest(const std::vector<CommitRecord>& records) {
  bool with_message = std::any_of(records.begin(), records.end(),
                                  [](const CommitRecord& r) { return !r.message.empty(); });
  csv::Table t;
  t.header = {"repo_url", "sha", "label", "test_fold"};
  if (with_message) t.header.push_back("message");
  for (const auto& r : records) {
    csv::Row row = {r.repo_url, r.sha, std::to_string(r.label), std::to_string(r.test_fold)};
    if (with_message) row.push_back(r.message);
    t.rows.push_back(std::move(row));
  }
  return csv::format_table(t);
}

std::string repo_name(const std::string& repo_url) {
  std::string s = repo_url;
  while (!s.empty() && (s.back() == '/' || s.back() == '\\')) s.pop_back();
  auto slash = s.find_last_of("/:\\");
  if (slash != std::string::npos) s = s.substr(slash + 1);
  if (s.size() > 4 && s.compare(s.size() - 4, 4, ".git") == 0) s.resize(s.size() - 4);
  if (s.empty()) throw ValidationError("cannot derive a repository name from '" + repo_url + "'");
  return s;
}

std::string commit_id(const CommitRecord& r) { return repo_name(r.repo_url) + "_" + r.sha; }

fs::path clone_dir(const fs::path& clone_root, const std::string& url) {
  fs::path root = clone_root;
  if (const char* env = std::getenv("VFIX_CLONE_ROOT"); env && *env) root = env;
  return root / repo_name(url);
}

GitRepo::GitRepo(fs::path dir) : dir_(std::move(dir)) {
  if (!fs::exists(dir_)) throw RuntimeError("repository clone not found: " + dir_.string());
  auto r = run_process({"git", "-C", dir_.string(), "rev-parse", "--git-dir"});
  if (r.exit_code != 0) throw RuntimeError("not a git repository: " + dir_.string());
}

std::string GitRepo::git(const std::vector<std::string>& args) const {
  std::vector<std::string> argv = {"git", "-C", dir_.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  auto r = run_process(argv);
  if (r.exit_code != 0) {
    std::string cmd;
    for (const auto& a : args) cmd += " " + a;
    throw RuntimeError("git" + cmd + " failed: " + r.err);
  }
  return r.out;
}

bool GitRepo::reachable(const std::string& sha) const {
  auto type = run_process({"git", "-C", dir_.string(), "cat-file", "-t", sha});
  if (type.exit_code != 0 || type.out != "commit\n") return false;
  auto refs = run_process({"git", "-C", dir_.string(), "for-each-ref", "--contains", sha,
                           "--format=%(refname)"});
  if (refs.exit_code == 0 && !refs.out.empty()) return true;
  auto head = run_process({"git", "-C", dir_.string(), "merge-base", "--is-ancestor", sha, "HEAD"});
  return head.exit_code == 0;
}

std::vector<std::string> GitRepo::parents(const std::string& sha) const {
  std::string out = git({"rev-list", "--parents", "-n", "1", sha});
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t end = out.find_first_of(" \n", start);
    if (end == std::string::npos) end = out.size();
    if (end > start) ids.push_back(out.substr(start, end - start));
    start = end + 1;
  }
  if (!ids.empty()) ids.erase(ids.begin());
  return ids;
}

std::string GitRepo::message(const std::string& sha) const {
  return git({"log", "-1", "--format=%B", sha});
}

std::vector<std::string> GitRepo::all_commits() const {
  std::string out = git({"rev-list", "--all"});
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t end = out.find('\n', start);
    if (end == std::string::npos) end = out.size();
    if (end > start) ids.push_back(out.substr(start, end - start));
    start = end + 1;
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<GitRepo::Change> GitRepo::changes(const std::string& sha) const {
  auto ps = parents(sha);
  std::vector<std::string> args = {"diff-tree", "-r", "-z", "--no-commit-id", "--name-status", "--no-renames"};
  if (ps.empty()) {
    args.push_back("--root");
    args.push_back(sha);
  } else {
    args.push_back(ps.front());
    args.push_back(sha);
  }
  std::string out = git(args);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t end = out.find('\0', start);
    if (end == std::string::npos) end = out.size();
    fields.push_back(out.substr(start, end - start));
    start = end + 1;
  }
  std::vector<Change> changes;
  for (std::size_t i = 0; i + 1 < fields.size(); i += 2) {
    const std::string& code = fields[i];
    FileStatus status = FileStatus::Modified;
    if (code == "A") {
      status = FileStatus::Added;
    } else if (code == "D") {
      status = FileStatus::Deleted;
    } else if (code == "M" || code == "T") {
      status = FileStatus::Modified;
    } else {
      continue;
    }
    changes.push_back({fields[i + 1], status});
  }
  std::sort(changes.begin(), changes.end(),
            [](const Change& a, const Change& b) { return a.path < b.path; });
  return changes;
}

std::string GitRepo::blob(const std::string& rev, const std::string& path) const {
  return git({"cat-file", "blob", rev + ":" + path});
}

bool SourceFilter::matches(const std::string& path) const {
  for (const auto& ext : extensions) {
    if (path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
      return true;
    }
  }
  return false;
}

CommitSnapshot resolve_commit(const GitRepo& repo, const CommitRecord& record,
                              const SourceFilter& filter) {
  if (!repo.reachable(record.sha)) {
    throw UnreachableCommit("commit " + record.sha + " is not reachable in " + repo.dir().string());
  }
  CommitSnapshot snap{record, {}};
  auto ps = repo.parents(record.sha);
  for (const auto& ch : repo.changes(record.sha)) {
    if (!filter.matches(ch.path)) continue;
    FilePair fp;
    fp.path = ch.path;
    fp.status = ch.status;
    if (ch.status != FileStatus::Added) fp.pre_text = repo.blob(ps.front(), ch.path);
    if (ch.status != FileStatus::Deleted) fp.post_text = repo.blob(record.sha, ch.path);
    // Mode-only changes leave the text identical; nothing to analyze.
    if (fp.status == FileStatus::Modified && *fp.pre_text == *fp.post_text) continue;
    snap.files.push_back(std::move(fp));
  }
  return snap;
}

const std::vector<std::string>& default_security_keywords() {
  static const std::vector<std::string> words = {
      "security", "vulnerab", "exploit", "cve",  "xss",
      "injection", "overflow", "csrf",   "denial of service", "rce"};
  return words;
}

NegativeSample sample_negatives(const GitRepo& repo, const std::vector<CommitRecord>& positives,
                                const std::vector<std::string>& keywords, std::size_t min_files,
                                std::size_t max_files, std::uint64_t seed,
                                const SourceFilter& filter) {
  std::set<std::string> taken;
  for (const auto& p : positives) taken.insert(p.sha);
  std::vector<std::string> pool;
  for (const auto& sha : repo.all_commits()) {
    if (!taken.count(sha)) pool.push_back(sha);
  }
  Rng rng(seed);
  rng.shuffle(pool);

  NegativeSample out;
  out.requested = positives.size();
  const std::string url = positives.empty() ? std::string() : positives.front().repo_url;
  for (const auto& sha : pool) {
    if (out.records.size() == out.requested) break;
    std::string msg = lower(repo.message(sha));
    bool flagged = std::any_of(keywords.begin(), keywords.end(), [&](const std::string& k) {
      return msg.find(lower(k)) != std::string::npos;
    });
    if (flagged) continue;
    std::size_t n = 0;
    for (const auto& ch : repo.changes(sha)) n += filter.matches(ch.path) ? 1 : 0;
    if (n < min_files || n > max_files) continue;
    CommitRecord rec;
    rec.repo_url = url;
    rec.sha = sha;
    rec.label = 0;
    rec.test_fold = positives[out.records.size()].test_fold;
    out.records.push_back(std::move(rec));
  }
  return out;
}

void write_snapshot(const fs::path& cache_root, const CommitSnapshot& snap) {
  const fs::path dir = cache_root / commit_id(snap.record);
  csv::Table files;
  files.header = {"path", "status"};
  for (const auto& f : snap.files) {
    f.validate();
    if (f.pre_text) write_file_if_changed(dir / "pre" / f.path, *f.pre_text);
    if (f.post_text) write_file_if_changed(dir / "post" / f.path, *f.post_text);
    files.rows.push_back({f.path, std::string(status_name(f.status))});
  }
  // files.csv goes last: its presence marks a complete entry.
  write_file_if_changed(dir / "files.csv", csv::format_table(files));
}

bool has_snapshot(const fs::path& cache_root, const CommitRecord& record) {
  return fs::exists(cache_root / commit_id(record) / "files.csv");
}

CommitSnapshot read_snapshot(const fs::path& cache_root, const CommitRecord& record) {
  const fs::path dir = cache_root / commit_id(record);
  if (!fs::exists(dir / "files.csv")) {
    throw ValidationError("snapshot missing for " + commit_id(record) + " (run `vfix ingest`)");
  }
  csv::Table t = csv::read_table(dir / "files.csv");
  CommitSnapshot snap{record, {}};
  for (const auto& row : t.rows) {
    if (row.size() != 2) throw ValidationError("malformed files.csv in " + dir.string());
    FilePair f;
    f.path = row[0];
    f.status = parse_status(row[1]);
    if (f.status != FileStatus::Added) f.pre_text = read_file(dir / "pre" / f.path);
    if (f.status != FileStatus::Deleted) f.post_text = read_file(dir / "post" / f.path);
    snap.files.push_back(std::move(f));
  }
  return snap;
}

}  // namespace vfix
