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

#ifndef VFIX_PROCESS_HPP_
#define VFIX_PROCESS_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vfix {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs `argv[0]` (looked up on PATH) without a shell. `env` entries are added
// to the inherited environment. Throws RuntimeError if the process cannot be
// started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::filesystem::path& cwd = {},
                          const std::map<std::string, std::string>& env = {},
                          const std::string& stdin_data = {});

}  // namespace vfix

#endif  // VFIX_PROCESS_HPP_
