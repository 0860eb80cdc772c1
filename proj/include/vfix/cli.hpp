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

#ifndef VFIX_CLI_HPP_
#define VFIX_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vfix/embedding.hpp"

namespace vfix::cli {

// Settings shared by every subcommand. A config file holds `key = value`
// lines; flags given on the command line win over the file.
struct RunConfig {
  std::filesystem::path manifest = "manifest.csv";
  std::filesystem::path clone_root = "clones";
  std::filesystem::path workdir = "vfix-work";
  std::vector<Analyzer> analyzers = all_analyzers();
  bool prune_per_fold = false;
  double alpha = 0.05;
  int max_bins = 0;  // 0 = per-embedding default
  std::uint64_t seed = 0;
  int n_iter = 200;
  double min_recall = 0.3;
  int jobs = 1;
  std::size_t max_files = 100;    // ingest: larger commits are excluded as oversized
  std::string folds = "manifest";  // or "stratified"

  void validate() const;
};

// Throws ValidationError on unknown keys or bad values.
RunConfig parse_config(std::string_view text, RunConfig base = {});
// Applies one `key`/`value` pair.
void set_config_value(RunConfig& c, const std::string& key, const std::string& value);
const std::vector<std::string>& config_keys();

// Exit codes: 0 success, 1 validation error, 2 runtime error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace vfix::cli

#endif  // VFIX_CLI_HPP_
