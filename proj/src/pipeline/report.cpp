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

#include "vfix/pipeline/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vfix/csv.hpp"

namespace vfix::pipeline {

using nlohmann::ordered_json;

namespace {

ordered_json spec_json(const ml::ModelSpec& s) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  return {{"algorithm", ml::algorithm_name(s.algorithm)}, {"params", params}, {"seed", s.seed}};
}

ordered_json candidate_json(const Candidate& c) {
  ordered_json j = spec_json(c.model);
  const auto& s = c.selection;
  ordered_json sel;
  sel["prune"] = s.prune;
  sel["variance"] = s.variance ? ordered_json(s.variance_threshold) : ordered_json(nullptr);
  sel["correlation"] = s.correlation ? ordered_json(s.r_max) : ordered_json(nullptr);
  sel["rfe"] = s.rfe ? ordered_json(s.rfe_keep) : ordered_json(nullptr);
  j["selection"] = sel;
  return j;
}

ordered_json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

ordered_json nested_json(const NestedResult& r) {
  ordered_json folds = ordered_json::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"fold", f.fold},
                     {"choice", f.choice},
                     {"threshold", f.threshold},
                     {"precision", f.metrics.precision},
                     {"recall", f.metrics.recall},
                     {"f1", f.metrics.f1},
                     {"accuracy", f.metrics.accuracy},
                     {"tp", f.metrics.tp},
                     {"fp", f.metrics.fp},
                     {"fn", f.metrics.fn},
                     {"tn", f.metrics.tn}});
  }
  ordered_json pr_mean = ordered_json::array(), pr_std = ordered_json::array();
  for (const auto& m : r.pr) {
    pr_mean.push_back(m.mean);
    pr_std.push_back(m.std);
  }
  return {{"folds", folds},
          {"pr_curve", {{"precision_mean", pr_mean}, {"precision_std", pr_std}}},
          {"precision", mean_std_json(r.precision)},
          {"recall", mean_std_json(r.recall)},
          {"f1", mean_std_json(r.f1)},
          {"accuracy", mean_std_json(r.accuracy)}};
}

int selected_count(const NestedResult& r, std::size_t option) {
  int n = 0;
  for (const auto& f : r.folds) n += f.choice == static_cast<int>(option);
  return n;
}

ordered_json grid_score(const std::vector<CvScore>& row) {
  double p = 0, r = 0;
  for (const auto& s : row) {
    if (s.precision < 0) return {{"cv_precision", nullptr}, {"cv_recall", nullptr}};
    p += s.precision;
    r += s.recall;
  }
  return {{"cv_precision", p / kFolds}, {"cv_recall", r / kFolds}};
}

}  // namespace

std::vector<std::pair<std::string, const NestedResult*>> evaluated_models(const Experiment& ex) {
  std::vector<std::pair<std::string, const NestedResult*>> out;
  for (const auto& e : ex.embeddings) out.emplace_back(e.embedding, &e.nested);
  out.emplace_back("voting", &ex.voting.nested);
  out.emplace_back("stacking", &ex.stacking.nested);
  return out;
}

std::string format_run_report(const Experiment& ex) {
  ordered_json j;
  j["format"] = "vfix-run-report 1";
  j["seed"] = ex.options.seed;
  j["n_iter"] = ex.options.n_iter;
  j["min_recall"] = ex.options.min_recall;
  j["prune_per_fold"] = ex.options.prune_per_fold;
  j["rows"] = ex.labels.size();
  j["positives"] = std::count(ex.labels.begin(), ex.labels.end(), 1);

  ordered_json best = ordered_json::array();
  ordered_json embeddings = ordered_json::array();
  std::vector<std::string> base_names;
  for (const auto& e : ex.embeddings) {
    base_names.push_back(e.embedding);
    ordered_json b = candidate_json(e.candidates[static_cast<std::size_t>(e.best.index)]);
    b["embedding"] = e.embedding;
    b["features"] = e.feature_names.size();
    b["cv_precision"] = e.best.precision;
    b["cv_recall"] = e.best.recall;
    best.push_back(b);

    ordered_json ev = nested_json(e.nested);
    for (auto& f : ev["folds"]) {
      f["selected"] = candidate_json(e.candidates[f["choice"].get<std::size_t>()]);
    }
    std::size_t failed = 0;
    for (const auto& s : e.scores) failed += !s.ok;
    embeddings.push_back({{"embedding", e.embedding},
                          {"features", e.feature_names.size()},
                          {"candidates", e.candidates.size()},
                          {"failed_candidates", failed},
                          {"evaluation", ev}});
  }
  j["best_models"] = best;
  j["embeddings"] = embeddings;

  ordered_json vgrid = ordered_json::array();
  for (std::size_t i = 0; i < ex.voting.grid.size(); ++i) {
    ordered_json bases = ordered_json::array();
    for (std::size_t b = 0; b < base_names.size(); ++b) {
      if (ex.voting.grid[i].weights[b]) bases.push_back(base_names[b]);
    }
    ordered_json g = {{"weights", ex.voting.grid[i].weights}, {"bases", bases}};
    g.update(grid_score(ex.voting.table[i]));
    g["folds_selected"] = selected_count(ex.voting.nested, i);
    vgrid.push_back(g);
  }
  ordered_json voting_eval = nested_json(ex.voting.nested);
  for (auto& f : voting_eval["folds"]) {
    f["selected"] = ex.voting.grid[f["choice"].get<std::size_t>()].weights;
  }
  j["voting"] = {{"grid_size", ex.voting.grid.size()},
                 {"grid", vgrid},
                 {"best", ex.voting.grid[static_cast<std::size_t>(ex.voting.best.index)].weights},
                 {"evaluation", voting_eval}};

  ordered_json sgrid = ordered_json::array();
  std::vector<std::string> finals;
  for (std::size_t i = 0; i < ex.stacking.grid.size(); ++i) {
    const auto& spec = ex.stacking.grid[i].final_spec;
    std::string name(ml::algorithm_name(spec.algorithm));
    if (std::find(finals.begin(), finals.end(), name) == finals.end()) finals.push_back(name);
    ordered_json g = {{"final_estimator", spec_json(spec)}};
    g.update(grid_score(ex.stacking.table[i]));
    g["folds_selected"] = selected_count(ex.stacking.nested, i);
    sgrid.push_back(g);
  }
  ordered_json stacking_eval = nested_json(ex.stacking.nested);
  for (auto& f : stacking_eval["folds"]) {
    f["selected"] = spec_json(ex.stacking.grid[f["choice"].get<std::size_t>()].final_spec);
  }
  j["stacking"] = {
      {"final_estimators", finals},
      {"grid_size", ex.stacking.grid.size()},
      {"grid", sgrid},
      {"best", spec_json(ex.stacking.grid[static_cast<std::size_t>(ex.stacking.best.index)].final_spec)},
      {"evaluation", stacking_eval}};

  ordered_json cmp = ordered_json::array();
  for (const auto& [name, r] : evaluated_models(ex)) {
    cmp.push_back({{"model", name},
                   {"precision", mean_std_json(r->precision)},
                   {"recall", mean_std_json(r->recall)},
                   {"f1", mean_std_json(r->f1)},
                   {"accuracy", mean_std_json(r->accuracy)}});
  }
  j["comparison"] = cmp;
  return j.dump(2) + "\n";
}

std::string format_pr_csv(const NestedResult& r) {
  csv::Table t;
  t.header = {"recall_grid", "precision_mean", "precision_std"};
  for (int g = 0; g < kRecallGridSize; ++g) {
    const auto& m = r.pr[static_cast<std::size_t>(g)];
    t.rows.push_back({csv::format_number(g / 100.0), csv::format_number(m.mean),
                      csv::format_number(m.std)});
  }
  return csv::format_table(t);
}

namespace {

ordered_json parse_report(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("run report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "vfix-run-report 1") {
    throw ValidationError("not a vfix run report");
  }
  return j;
}

std::string pr_csv(const ordered_json& curve) {
  csv::Table t;
  t.header = {"recall_grid", "precision_mean", "precision_std"};
  const auto& mean = curve.at("precision_mean");
  const auto& sd = curve.at("precision_std");
  if (mean.size() != static_cast<std::size_t>(kRecallGridSize) || sd.size() != mean.size()) {
    throw ValidationError("run report: PR curve must have " + std::to_string(kRecallGridSize) + " points");
  }
  for (int g = 0; g < kRecallGridSize; ++g) {
    t.rows.push_back({csv::format_number(g / 100.0), csv::format_number(mean[g].get<double>()),
                      csv::format_number(sd[g].get<double>())});
  }
  return csv::format_table(t);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> pr_csvs_from_report(const std::string& report_json) {
  auto j = parse_report(report_json);
  std::vector<std::pair<std::string, std::string>> out;
  try {
    for (const auto& e : j.at("embeddings")) {
      out.emplace_back(e.at("embedding").get<std::string>(), pr_csv(e.at("evaluation").at("pr_curve")));
    }
    out.emplace_back("voting", pr_csv(j.at("voting").at("evaluation").at("pr_curve")));
    out.emplace_back("stacking", pr_csv(j.at("stacking").at("evaluation").at("pr_curve")));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("run report is missing PR curves: ") + e.what());
  }
  return out;
}

std::string format_summary_from_report(const std::string& report_json) {
  auto j = parse_report(report_json);
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %16s %16s %16s %16s\n", "model", "precision", "recall",
                "f1", "accuracy");
  out << line;
  auto cell = [](const ordered_json& m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%6.2f +- %5.2f", 100 * m["mean"].get<double>(),
                  100 * m["std"].get<double>());
    return std::string(buf);
  };
  for (const auto& row : j["comparison"]) {
    std::snprintf(line, sizeof line, "%-12s %16s %16s %16s %16s\n",
                  row["model"].get<std::string>().c_str(), cell(row["precision"]).c_str(),
                  cell(row["recall"]).c_str(), cell(row["f1"]).c_str(),
                  cell(row["accuracy"]).c_str());
    out << line;
  }
  out << "\nbest models:\n";
  for (const auto& b : j["best_models"]) {
    out << "  " << b["embedding"].get<std::string>() << ": " << b["algorithm"].get<std::string>()
        << ' ' << b["params"].dump() << '\n';
  }
  out << "voting grid: " << j["voting"]["grid_size"] << " combinations, best "
      << j["voting"]["best"].dump() << '\n';
  out << "stacking grid: " << j["stacking"]["grid_size"] << " specs over "
      << j["stacking"]["final_estimators"].size() << " final estimators, best "
      << j["stacking"]["best"]["algorithm"].get<std::string>() << '\n';
  out << "(fold-averaged, mean +- std in percent, threshold chosen at min_recall "
      << j["min_recall"].dump() << ")\n";
  return out.str();
}

}  // namespace vfix::pipeline
