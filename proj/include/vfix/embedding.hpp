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

#ifndef VFIX_EMBEDDING_HPP_
#define VFIX_EMBEDDING_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/corpus.hpp"

namespace vfix {

enum class Analyzer { Lint, LintStyle, Metrics, Graph };

std::string_view analyzer_name(Analyzer a);
Analyzer parse_analyzer(std::string_view name);
const std::vector<Analyzer>& all_analyzers();

// Per-file feature names of an analyzer, ending with `parse_error`.
std::vector<std::string> analyzer_feature_names(Analyzer a);

// Feature vector of one file version. A file outside the parser subset
// yields zeros with parse_error = 1; the lint analyzers still report their
// text rules.
FeatureVector analyze_source(Analyzer a, std::string_view text);

// Parses once and runs every requested analyzer.
std::map<Analyzer, FeatureVector> analyze_source_all(std::string_view text,
                                                     const std::vector<Analyzer>& analyzers);

// (pre, post) vectors of a changed file. The absent side of an added or
// deleted file is all zeros.
std::pair<FeatureVector, FeatureVector> version_vectors(const FilePair& pair, Analyzer a);

// Element-wise post - pre. Throws ValidationError when names differ.
FeatureVector file_diff(const FeatureVector& pre, const FeatureVector& post);

// `f_pos` = sum of positive parts, `f_neg` = sum of negative magnitudes, for
// every f in `universe`, in universe order (pos before neg).
FeatureVector aggregate_commit(const std::vector<FeatureVector>& diffs,
                               const std::vector<std::string>& universe);

// Commit-level embedding of one snapshot for each analyzer.
std::map<Analyzer, FeatureVector> embed_commit(const CommitSnapshot& snap,
                                               const std::vector<Analyzer>& analyzers);

struct EmbeddingMatrix {
  std::string analyzer;
  std::vector<std::string> feature_names;
  std::vector<std::string> commit_ids;
  Labels labels;
  std::vector<int> folds;
  Matrix values;  // rows follow commit_ids

  std::size_t rows() const { return commit_ids.size(); }
  // Throws ValidationError unless rectangular with unique names.
  void validate() const;
  bool operator==(const EmbeddingMatrix&) const = default;
};

// Reorders columns by name.
EmbeddingMatrix sort_columns(const EmbeddingMatrix& m);

// Rounds to 12 significant digits, the precision used for column equality.
double round_significant(double v);

// Keep-mask after dropping constant columns and later duplicates. Columns are
// compared on `rows` only (all rows when empty); among equal columns the
// lexicographically first name survives.
std::vector<bool> prune_mask(const EmbeddingMatrix& m, std::span<const std::size_t> rows = {});
EmbeddingMatrix prune_columns(const EmbeddingMatrix& m);
EmbeddingMatrix select_columns(const EmbeddingMatrix& m, const std::vector<bool>& keep);

// CSV with header `commit_id,label,test_fold,<features...>`.
std::string format_embedding(const EmbeddingMatrix& m);
EmbeddingMatrix parse_embedding(std::string_view text, std::string analyzer);
EmbeddingMatrix read_embedding(const std::filesystem::path& path, std::string analyzer);

}  // namespace vfix

#endif  // VFIX_EMBEDDING_HPP_
