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

#ifndef VFIX_SYNTH_HPP_
#define VFIX_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vfix/corpus.hpp"

namespace vfix::synth {

// Parses `high` (0.8), `medium` (0.5), `low` (0.25), `none` (0) or a number
// in [0, 1].
double parse_signal(std::string_view text);

struct Options {
  std::size_t n = 200;  // labelled commits, half positive
  double signal = 0.8;  // chance that a positive's main edit is a fix pattern
  std::uint64_t seed = 0;
  std::size_t files = 40;
};

struct PlantedFeature {
  std::string analyzer;
  std::string feature;
};

// Embedding columns the fix patterns move and the neutral edits leave alone.
const std::vector<PlantedFeature>& planted_features();

inline constexpr const char* kRepoUrl = "synth://corpus/synth-app";

struct Corpus {
  std::vector<CommitRecord> manifest;
  std::filesystem::path repo;
};

// Writes `<out>/clones/synth-app` (a git repository), `<out>/manifest.csv`
// and `<out>/planted_features.txt`. The same options give the same commits
// and the same shas. An unchanged corpus is left in place.
Corpus generate(const std::filesystem::path& out, const Options& opt);

}  // namespace vfix::synth

#endif  // VFIX_SYNTH_HPP_
