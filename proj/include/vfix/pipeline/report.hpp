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

#ifndef VFIX_PIPELINE_REPORT_HPP_
#define VFIX_PIPELINE_REPORT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "vfix/pipeline/experiment.hpp"

namespace vfix::pipeline {

// Run report JSON (pretty-printed, deterministic).
std::string format_run_report(const Experiment& ex);

// `recall_grid,precision_mean,precision_std` for a nested evaluation.
std::string format_pr_csv(const NestedResult& r);

// (file stem, result) for every evaluated model: the embeddings, voting and
// stacking.
std::vector<std::pair<std::string, const NestedResult*>> evaluated_models(const Experiment& ex);

// (model, `recall_grid,precision_mean,precision_std` CSV) read back from a run
// report.
std::vector<std::pair<std::string, std::string>> pr_csvs_from_report(const std::string& report_json);

// Human-readable comparison table built from a run report.
std::string format_summary_from_report(const std::string& report_json);

}  // namespace vfix::pipeline

#endif  // VFIX_PIPELINE_REPORT_HPP_
