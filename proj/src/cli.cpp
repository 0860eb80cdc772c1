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

#include "vfix/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "vfix/analysis/class_metrics.hpp"
#include "vfix/analysis/lint.hpp"
#include "vfix/corpus.hpp"
#include "vfix/csv.hpp"
#include "vfix/java/parser.hpp"
#include "vfix/pipeline/experiment.hpp"
#include "vfix/pipeline/report.hpp"
#include "vfix/process.hpp"
#include "vfix/stats.hpp"
#include "vfix/synth.hpp"

namespace vfix::cli {

namespace fs = std::filesystem;

// ---- configuration ----

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "manifest", "clone_root", "workdir", "analyzers", "prune_per_fold", "alpha", "max_bins",
      "seed",     "n_iter",     "min_recall", "jobs",  "max_files",      "folds"};
  return keys;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long parse_integer(const std::string& key, const std::string& v) {
  double d = 0;
  try {
    d = csv::parse_number(v);
  } catch (const std::exception&) {
    throw ValidationError("config " + key + ": expected an integer, got '" + v + "'");
  }
  if (d != std::floor(d)) throw ValidationError("config " + key + ": expected an integer, got '" + v + "'");
  return static_cast<long>(d);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    return csv::parse_number(v);
  } catch (const std::exception&) {
    throw ValidationError("config " + key + ": expected a number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("config " + key + ": expected true or false, got '" + v + "'");
}

}  // namespace

void set_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "manifest") {
    c.manifest = v;
  } else if (key == "clone_root") {
    c.clone_root = v;
  } else if (key == "workdir") {
    c.workdir = v;
  } else if (key == "analyzers") {
    c.analyzers.clear();
    std::stringstream in(v);
    std::string name;
    while (std::getline(in, name, ',')) {
      Analyzer a = parse_analyzer(trim(name));
      if (std::find(c.analyzers.begin(), c.analyzers.end(), a) == c.analyzers.end()) {
        c.analyzers.push_back(a);
      }
    }
    // Canonical order keeps file names and report order stable.
    std::vector<Analyzer> ordered;
    for (Analyzer a : all_analyzers()) {
      if (std::find(c.analyzers.begin(), c.analyzers.end(), a) != c.analyzers.end()) ordered.push_back(a);
    }
    c.analyzers = ordered;
  } else if (key == "prune_per_fold") {
    c.prune_per_fold = parse_bool(key, v);
  } else if (key == "alpha") {
    c.alpha = parse_real(key, v);
  } else if (key == "max_bins") {
    c.max_bins = static_cast<int>(parse_integer(key, v));
  } else if (key == "seed") {
    long s = parse_integer(key, v);
    if (s < 0) throw ValidationError("config seed: must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "n_iter") {
    c.n_iter = static_cast<int>(parse_integer(key, v));
  } else if (key == "min_recall") {
    c.min_recall = parse_real(key, v);
  } else if (key == "jobs") {
    c.jobs = static_cast<int>(parse_integer(key, v));
  } else if (key == "max_files") {
    long m = parse_integer(key, v);
    if (m < 1) throw ValidationError("config max_files: must be >= 1");
    c.max_files = static_cast<std::size_t>(m);
  } else if (key == "folds") {
    c.folds = v;
  } else {
    std::string known;
    for (const auto& k : config_keys()) known += (known.empty() ? "" : ", ") + k;
    throw ValidationError("unknown config key '" + key + "' (known: " + known + ")");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(no) + ": expected key = value");
    }
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    set_config_value(base, trim(t.substr(0, eq)), value);
  }
  return base;
}

void RunConfig::validate() const {
  if (analyzers.empty()) throw ValidationError("config analyzers: at least one analyzer is required");
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("config alpha: must lie in (0, 1)");
  if (max_bins != 0 && max_bins < 2) throw ValidationError("config max_bins: must be 0 or >= 2");
  if (n_iter < 1) throw ValidationError("config n_iter: must be >= 1");
  if (!(min_recall >= 0 && min_recall <= 1)) throw ValidationError("config min_recall: must lie in [0, 1]");
  if (jobs < 1) throw ValidationError("config jobs: must be >= 1");
  if (folds != "manifest" && folds != "stratified") {
    throw ValidationError("config folds: must be manifest or stratified");
  }
}

// ---- stage layout ----

namespace {

struct Layout {
  fs::path root;
  fs::path cache() const { return root / "cache"; }
  fs::path ingest_report() const { return root / "ingest_report.csv"; }
  fs::path ingested() const { return root / "ingested.csv"; }
  fs::path embedding(Analyzer a) const {
    return root / "embeddings" / ("embedding_" + std::string(analyzer_name(a)) + ".csv");
  }
  fs::path association(Analyzer a) const {
    return root / "stats" / ("association_" + std::string(analyzer_name(a)) + ".csv");
  }
  fs::path stats_summary() const { return root / "stats" / "summary.csv"; }
  fs::path run() const { return root / "run"; }
  fs::path report() const { return run() / "report.json"; }
  fs::path model(const std::string& name) const { return run() / "models" / (name + ".model"); }
};

void require(const fs::path& p, const std::string& producer) {
  if (!fs::exists(p)) {
    throw ValidationError("missing " + p.string() + "; run `vfix " + producer + "` first");
  }
}

void write_output(const fs::path& p, const std::string& content) {
  if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
  write_file_if_changed(p, content);
}

std::vector<EmbeddingMatrix> load_embeddings(const RunConfig& cfg, const fs::path& dir) {
  std::vector<EmbeddingMatrix> out;
  for (Analyzer a : cfg.analyzers) {
    fs::path p = dir / ("embedding_" + std::string(analyzer_name(a)) + ".csv");
    require(p, "embed");
    out.push_back(read_embedding(p, std::string(analyzer_name(a))));
  }
  return out;
}

// ---- subcommands ----

int cmd_fetch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto records = load_manifest(cfg.manifest);
  std::set<std::string> done;
  int failures = 0;
  for (const auto& r : records) {
    if (!done.insert(r.repo_url).second) continue;
    fs::path dir = clone_dir(cfg.clone_root, r.repo_url);
    if (fs::exists(dir)) {
      out << "present " << dir.string() << "\n";
      continue;
    }
    if (r.repo_url.rfind("synth://", 0) == 0) {
      err << "cannot fetch " << r.repo_url << ": synthetic repositories come from `vfix synth`\n";
      ++failures;
      continue;
    }
    fs::create_directories(dir.parent_path());
    auto res = run_process({"git", "clone", "--quiet", r.repo_url, dir.string()});
    if (res.exit_code != 0) {
      err << "clone failed for " << r.repo_url << ": " << res.err;
      ++failures;
    } else {
      out << "cloned " << r.repo_url << "\n";
    }
  }
  return failures ? 2 : 0;
}

// Adds one label-0 commit per positive, drawn from the positive's repository.
void add_negatives(const RunConfig& cfg, std::vector<CommitRecord>& records, std::ostream& out,
                   std::ostream& err) {
  std::map<std::string, std::vector<CommitRecord>> positives;
  for (const auto& r : records) {
    if (r.label == 1) positives[r.repo_url].push_back(r);
  }
  std::uint64_t salt = 0;
  for (const auto& [url, pos] : positives) {
    fs::path dir = clone_dir(cfg.clone_root, url);
    ++salt;
    if (!fs::exists(dir)) continue;  // reported as missing_clone below
    auto sample = sample_negatives(GitRepo(dir), pos, default_security_keywords(), 1, cfg.max_files,
                                   cfg.seed + salt);
    if (sample.partial()) {
      err << "warning: " << url << ": only " << sample.records.size() << " of " << sample.requested
          << " negatives available\n";
    }
    out << "sampled " << sample.records.size() << " negatives from " << url << "\n";
    records.insert(records.end(), sample.records.begin(), sample.records.end());
  }
}

int cmd_ingest(const RunConfig& cfg, bool sample_negs, std::ostream& out, std::ostream& err) {
  Layout L{cfg.workdir};
  auto records = load_manifest(cfg.manifest);
  if (sample_negs) add_negatives(cfg, records, out, err);
  struct Outcome {
    std::string status;
    std::string reason;
  };
  std::vector<Outcome> outcome(records.size());
  std::set<std::string> missing;
  std::mutex mu;
  fs::create_directories(L.cache());
  pipeline::parallel_for(records.size(), cfg.jobs, [&](std::size_t i) {
    const auto& rec = records[i];
    if (has_snapshot(L.cache(), rec)) {
      outcome[i] = {"included", "cached"};
      return;
    }
    fs::path dir = clone_dir(cfg.clone_root, rec.repo_url);
    if (!fs::exists(dir)) {
      std::lock_guard<std::mutex> lock(mu);
      missing.insert(dir.string());
      outcome[i] = {"excluded", "missing_clone"};
      return;
    }
    try {
      GitRepo repo(dir);
      auto snap = resolve_commit(repo, rec);
      if (snap.files.empty()) {
        outcome[i] = {"excluded", "empty"};
      } else if (snap.files.size() > cfg.max_files) {
        outcome[i] = {"excluded", "oversized"};
      } else {
        write_snapshot(L.cache(), snap);
        outcome[i] = {"included", "resolved"};
      }
    } catch (const UnreachableCommit&) {
      outcome[i] = {"excluded", "unreachable"};
    }
  });
  for (const auto& m : missing) err << "error: clone directory " << m << " does not exist\n";

  csv::Table report;
  report.header = {"commit_id", "label", "test_fold", "status", "reason"};
  std::vector<CommitRecord> included;
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    report.rows.push_back({commit_id(r), std::to_string(r.label), std::to_string(r.test_fold),
                           outcome[i].status, outcome[i].reason});
    if (outcome[i].status == "included") {
      included.push_back(r);
    } else {
      ++excluded;
    }
  }
  write_output(L.ingest_report(), csv::format_table(report));
  write_output(L.ingested(), format_manifest(included));
  out << "ingested " << included.size() << " commits, excluded " << excluded << "\n";
  bool all_missing = !records.empty() && included.empty() && missing.size() > 0;
  return all_missing ? 2 : 0;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
  Layout L{cfg.workdir};
  require(L.ingested(), "ingest");
  auto records = load_manifest(L.ingested());
  std::vector<std::map<Analyzer, FeatureVector>> vectors(records.size());
  pipeline::parallel_for(records.size(), cfg.jobs, [&](std::size_t i) {
    vectors[i] = embed_commit(read_snapshot(L.cache(), records[i]), cfg.analyzers);
  });
  for (Analyzer a : cfg.analyzers) {
    EmbeddingMatrix m;
    m.analyzer = std::string(analyzer_name(a));
    m.feature_names = aggregate_commit({}, analyzer_feature_names(a)).names;
    m.values = Matrix(records.size(), m.feature_names.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      const FeatureVector& v = vectors[i].at(a);
      if (v.names != m.feature_names) throw RuntimeError("embed: inconsistent feature names");
      m.commit_ids.push_back(commit_id(records[i]));
      m.labels.push_back(records[i].label);
      m.folds.push_back(records[i].test_fold);
      for (std::size_t j = 0; j < v.size(); ++j) m.values(i, j) = v.values[j];
    }
    m = sort_columns(m);
    if (!cfg.prune_per_fold) m = prune_columns(m);
    write_output(L.embedding(a), format_embedding(m));
    out << m.analyzer << ": " << m.rows() << " commits x " << m.feature_names.size() << " features\n";
  }
  return 0;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  Layout L{cfg.workdir};
  std::vector<stats::AssociationReport> reports;
  auto data = load_embeddings(cfg, L.root / "embeddings");
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& m = data[i];
    int bins = cfg.max_bins ? cfg.max_bins : stats::default_max_bins(m.analyzer);
    reports.push_back(stats::association_report(m, bins, cfg.alpha));
    write_output(L.association(cfg.analyzers[i]), stats::format_report(reports.back()));
  }
  std::string summary = stats::format_summary(reports);
  write_output(L.stats_summary(), summary);
  out << summary;
  return 0;
}

int cmd_train(const RunConfig& cfg, std::ostream& out) {
  Layout L{cfg.workdir};
  auto data = load_embeddings(cfg, L.root / "embeddings");
  if (cfg.folds == "stratified" && !data.empty()) {
    auto folds = pipeline::stratified_kfold(data[0].labels, pipeline::kFolds, cfg.seed);
    for (auto& m : data) m.folds = folds;
  }
  pipeline::ExperimentOptions opt;
  opt.n_iter = cfg.n_iter;
  opt.min_recall = cfg.min_recall;
  opt.seed = cfg.seed;
  opt.jobs = cfg.jobs;
  opt.prune_per_fold = cfg.prune_per_fold;
  auto ex = pipeline::run_experiment(data, opt);
  auto deployment = pipeline::deploy(ex, data);
  std::string report = pipeline::format_run_report(ex);
  write_output(L.report(), report);
  for (const auto& b : deployment.bases) write_output(L.model(b.embedding), pipeline::serialize_pipeline(b));
  write_output(L.model("ensemble"), pipeline::serialize_ensemble(deployment));
  out << pipeline::format_summary_from_report(report);
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  Layout L{cfg.workdir};
  require(L.report(), "train");
  std::string report = read_file(L.report());
  for (const auto& [name, text] : pipeline::pr_csvs_from_report(report)) {
    write_output(L.run() / "pr" / ("pr_" + name + ".csv"), text);
  }
  std::string summary = pipeline::format_summary_from_report(report);
  write_output(L.run() / "summary.txt", summary);
  out << summary;
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const fs::path& embeddings_dir, std::ostream& out) {
  Layout L{cfg.workdir};
  pipeline::Deployment d;
  for (Analyzer a : cfg.analyzers) {
    fs::path p = L.model(std::string(analyzer_name(a)));
    require(p, "train");
    d.bases.push_back(pipeline::deserialize_pipeline(read_file(p)));
  }
  require(L.model("ensemble"), "train");
  pipeline::deserialize_ensemble(read_file(L.model("ensemble")), d);
  auto data = load_embeddings(cfg, embeddings_dir.empty() ? L.root / "embeddings" : embeddings_dir);
  pipeline::check_aligned(data);
  auto scores = d.score(data);

  csv::Table pred;
  pred.header = {"commit_id", "label"};
  for (const auto& b : d.bases) pred.header.push_back(b.embedding);
  pred.header.push_back("voting");
  pred.header.push_back("stacking");
  for (std::size_t r = 0; r < data[0].rows(); ++r) {
    csv::Row row = {data[0].commit_ids[r], std::to_string(data[0].labels[r])};
    for (const auto& s : scores.bases) row.push_back(csv::format_number(s[r]));
    row.push_back(csv::format_number(scores.voting[r]));
    row.push_back(csv::format_number(scores.stacking[r]));
    pred.rows.push_back(row);
  }
  write_output(L.run() / "predictions.csv", csv::format_table(pred));

  csv::Table eval;
  eval.header = {"model", "threshold", "precision", "recall", "f1", "accuracy"};
  auto add = [&](const std::string& name, const std::vector<double>& s, double t) {
    auto m = pipeline::evaluate(data[0].labels, pipeline::apply_threshold(s, t));
    eval.rows.push_back({name, csv::format_number(t), csv::format_number(m.precision),
                         csv::format_number(m.recall), csv::format_number(m.f1),
                         csv::format_number(m.accuracy)});
  };
  for (std::size_t e = 0; e < d.bases.size(); ++e) add(d.bases[e].embedding, scores.bases[e], d.bases[e].threshold);
  add("voting", scores.voting, d.voting_threshold);
  add("stacking", scores.stacking, d.stacking_threshold);
  std::string text = csv::format_table(eval);
  write_output(L.run() / "evaluation.csv", text);
  out << text;
  return 0;
}

int cmd_synth(const RunConfig& cfg, const fs::path& out_dir, const synth::Options& opt, std::ostream& out) {
  fs::path dir = out_dir.empty() ? cfg.workdir : out_dir;
  auto corpus = synth::generate(dir, opt);
  fs::path abs = fs::absolute(dir);
  std::ostringstream conf;
  conf << "# written by vfix synth\n";
  conf << "manifest = " << (abs / "manifest.csv").string() << "\n";
  conf << "clone_root = " << (abs / "clones").string() << "\n";
  conf << "workdir = " << abs.string() << "\n";
  conf << "seed = " << opt.seed << "\n";
  write_output(dir / "vfix.conf", conf.str());
  out << "wrote " << corpus.manifest.size() << " commits to " << (dir / "manifest.csv").string() << "\n";
  return 0;
}

int cmd_rules_list(bool style, std::ostream& out) {
  csv::Table t;
  t.header = {"id", "category", "threshold", "text_based", "description"};
  auto catalog = analysis::rule_catalog(style ? analysis::LintConfiguration::Style
                                              : analysis::LintConfiguration::Strict);
  for (const auto& r : catalog) {
    t.rows.push_back({r.id, std::string(analysis::category_name(r.category)),
                      r.threshold ? std::to_string(*r.threshold) : "", r.text_based ? "1" : "0",
                      r.description});
  }
  out << csv::format_table(t);
  return 0;
}

int cmd_metrics_dump(const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
  csv::Table t;
  t.header = {"file", "class", "type"};
  for (const auto& n : analysis::class_metric_names()) t.header.push_back(n);
  int rc = 0;
  for (const auto& f : files) {
    if (!fs::exists(f)) throw ValidationError("no such file: " + f);
    auto parsed = java::parse_file(read_file(f));
    if (!parsed.ok()) {
      err << f << ": " << parsed.failure->to_string() << "\n";
      rc = 1;
      continue;
    }
    for (const auto& row : analysis::class_metrics(*parsed.ast, f)) {
      csv::Row r = {row.file, row.class_name, std::string(analysis::class_type_name(row.class_type))};
      for (double v : row.metrics) r.push_back(csv::format_number(v));
      t.rows.push_back(r);
    }
  }
  out << csv::format_table(t);
  return rc;
}

// Shared flags; values are applied over the config file after parsing.
struct CommonFlags {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  bool prune_per_fold = false;
  CLI::Option* prune_flag = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key = value config file")->check(CLI::ExistingFile);
    for (const auto& key : config_keys()) {
      if (key == "prune_per_fold") continue;
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      options[key] = app->add_option(flag, values[key]);
    }
    prune_flag = app->add_flag("--prune-per-fold", prune_per_fold,
                               "prune constant/duplicate columns inside each training split");
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config.empty()) c = parse_config(read_file(config));
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) set_config_value(c, key, values.at(key));
    }
    if (prune_flag->count() > 0) c.prune_per_fold = true;
    c.validate();
    return c;
  }
};

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vfix: embed commits with static analyzers and predict security fixes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::map<std::string, CommonFlags> flags;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    flags[name].attach(s);
    return s;
  };
  auto* fetch = sub("fetch", "clone the repositories named in the manifest");
  auto* ingest = sub("ingest", "resolve manifest commits into the snapshot cache");
  bool sample_negs = false;
  ingest->add_flag("--sample-negatives", sample_negs,
                   "add one random non-fix commit from the same repository per positive");
  auto* synth_cmd = sub("synth", "generate a synthetic labelled corpus");
  std::size_t synth_n = 200, synth_files = 40;
  std::string synth_signal = "high", synth_out;
  synth_cmd->add_option("--n", synth_n, "number of labelled commits (even)");
  synth_cmd->add_option("--signal", synth_signal, "high, medium, low, none or a number in [0, 1]");
  synth_cmd->add_option("--files", synth_files, "number of Java classes");
  synth_cmd->add_option("--out", synth_out, "output directory (default: workdir)");
  auto* embed = sub("embed", "embed ingested commits with every analyzer");
  auto* stats_cmd = sub("stats", "chi-square screening of embedding features");
  auto* train = sub("train", "search models per embedding and build ensembles");
  auto* evaluate = sub("evaluate", "score embeddings with the trained models");
  std::string eval_dir;
  evaluate->add_option("--embeddings", eval_dir, "directory with embedding_<analyzer>.csv files");
  auto* report = sub("report", "write PR-curve CSVs and a summary from the run report");

  auto* rules = app.add_subcommand("rules", "lint rule catalog");
  rules->require_subcommand(1);
  auto* rules_list = rules->add_subcommand("list", "print the rule catalog as CSV");
  bool style = false;
  rules_list->add_flag("--style", style, "style configuration only");
  auto* metrics = app.add_subcommand("metrics", "class metrics");
  metrics->require_subcommand(1);
  auto* metrics_dump = metrics->add_subcommand("dump", "print class metrics of Java files as CSV");
  std::vector<std::string> dump_files;
  metrics_dump->add_option("files", dump_files, "Java source files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    auto cfg = [&](const std::string& name) { return flags.at(name).resolve(); };
    if (*fetch) return cmd_fetch(cfg("fetch"), out, err);
    if (*ingest) return cmd_ingest(cfg("ingest"), sample_negs, out, err);
    if (*synth_cmd) {
      RunConfig c = cfg("synth");
      synth::Options o;
      o.n = synth_n;
      o.files = synth_files;
      o.signal = synth::parse_signal(synth_signal);
      o.seed = c.seed;
      return cmd_synth(c, synth_out, o, out);
    }
    if (*embed) return cmd_embed(cfg("embed"), out);
    if (*stats_cmd) return cmd_stats(cfg("stats"), out);
    if (*train) return cmd_train(cfg("train"), out);
    if (*evaluate) return cmd_evaluate(cfg("evaluate"), eval_dir, out);
    if (*report) return cmd_report(cfg("report"), out);
    if (*rules_list) return cmd_rules_list(style, out);
    if (*metrics_dump) return cmd_metrics_dump(dump_files, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace vfix::cli
