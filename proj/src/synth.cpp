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

#include "vfix/synth.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "vfix/csv.hpp"
#include "vfix/pipeline/selection.hpp"
#include "vfix/process.hpp"
#include "vfix/random.hpp"

namespace vfix::synth {

namespace fs = std::filesystem;

double parse_signal(std::string_view text) {
  if (text == "high") return 0.8;
  if (text == "medium") return 0.5;
  if (text == "low") return 0.25;
  if (text == "none") return 0.0;
  double v = 0;
  try {
    v = csv::parse_number(text);
  } catch (const std::exception&) {
    throw ValidationError("signal must be high, medium, low, none or a number in [0, 1], got '" +
                          std::string(text) + "'");
  }
  if (!(v >= 0 && v <= 1)) throw ValidationError("signal must lie in [0, 1]");
  return v;
}

const std::vector<PlantedFeature>& planted_features() {
  static const std::vector<PlantedFeature> planted = {
      {"lint", "CatchBroadException_neg"}, {"lint", "EmptyCatchBlock_neg"},
      {"lint", "HardcodedSecretString_neg"}, {"lint", "MagicNumber_pos"},
      {"lint", "MissingBracesIf_pos"},       {"lint", "StringEqualsOperator_neg"},
      {"lint_style", "MagicNumber_pos"},     {"lint_style", "MissingBracesIf_pos"},
      {"metrics", "comparison_count_pos"},   {"graph", "cfg_branch_node_count_pos"},
  };
  return planted;
}

namespace {

// A mutable Java class rendered to text after every edit.
struct JavaFile {
  std::string package;
  std::string name;
  std::vector<std::string> fields;
  std::vector<std::pair<std::string, std::vector<std::string>>> methods;  // signature, body
  bool broad_site = true;
  bool empty_site = true;
  bool secret_site = true;
  bool equals_site = true;
  std::string local = "total";
  int counter = 0;

  std::vector<std::string>& body(const std::string& prefix) {
    for (auto& [sig, b] : methods) {
      if (sig.rfind(prefix, 0) == 0) return b;
    }
    throw RuntimeError("synth: no method " + prefix);
  }

  std::string path() const {
    std::string dir = package;
    std::replace(dir.begin(), dir.end(), '.', '/');
    return "src/main/java/" + dir + "/" + name + ".java";
  }

  std::string render() const {
    std::ostringstream out;
    out << "package " << package << ";\n\n";
    out << "import java.io.IOException;\nimport java.io.Reader;\n\n";
    out << "public class " << name << " {\n";
    for (const auto& f : fields) out << "    " << f << "\n";
    for (const auto& [sig, b] : methods) {
      out << "\n    " << sig << " {\n";
      for (const auto& line : b) out << "        " << line << "\n";
      out << "    }\n";
    }
    out << "}\n";
    return out.str();
  }
};

JavaFile make_file(std::size_t i) {
  static const char* kStems[] = {"Account", "Session", "Upload", "Query", "Token",
                                 "Report", "Archive", "Profile"};
  JavaFile f;
  f.package = "app.module" + std::to_string(i % 4);
  f.name = std::string(kStems[i % 8]) + "Service" + std::to_string(i);
  f.fields = {"private int limit = 10;", "private int count;",
              "private String token = \"tok-" + std::to_string(i) + "-secret\";",
              "private Reader reader;"};
  f.methods = {
      {"public String process(String input)",
       {"String value = input.trim();", "count = count + 1;", "return value;"}},
      {"public Object get(int index)", {"Object item = lookup(index);", "return item;"}},
      {"public void load(String path)",
       {"try {", "    reader.read();", "} catch (Exception e) {", "    handle(e);", "}"}},
      {"public void save(String path)", {"try {", "    reader.close();", "} catch (IOException e) {", "}"}},
      {"public boolean isAdmin(String role)",
       {"if (role == \"admin\") {", "    return true;", "}", "return false;"}},
      {"public int compute(int base)",
       {"int total = base;", "total = total + limit;", "return total;"}},
      {"private Object lookup(int index)", {"return null;"}},
      {"private void handle(Exception e)", {"count = 0;"}},
  };
  return f;
}

void replace_line(std::vector<std::string>& body, const std::string& from, const std::string& to) {
  auto it = std::find(body.begin(), body.end(), from);
  if (it == body.end()) throw RuntimeError("synth: edit site missing: " + from);
  *it = to;
}

enum class Fix { Guard, Bounds, Broad, Empty, Secret, Equals };

bool has_site(const JavaFile& f, Fix k) {
  switch (k) {
    case Fix::Broad:
      return f.broad_site;
    case Fix::Empty:
      return f.empty_site;
    case Fix::Secret:
      return f.secret_site;
    case Fix::Equals:
      return f.equals_site;
    default:
      return true;
  }
}

void apply_fix(JavaFile& f, Fix k) {
  switch (k) {
    case Fix::Guard: {
      auto& b = f.body("public String process");
      b.insert(b.begin(), "if (input == null) throw new IllegalArgumentException(\"input is required\");");
      break;
    }
    case Fix::Bounds: {
      auto& b = f.body("public Object get");
      b.insert(b.begin(), {"if (index < 0 || index > 4096) {", "    return null;", "}"});
      break;
    }
    case Fix::Broad:
      replace_line(f.body("public void load"), "} catch (Exception e) {", "} catch (IOException e) {");
      f.broad_site = false;
      break;
    case Fix::Empty: {
      auto& b = f.body("public void save");
      b.insert(b.end() - 1, "    throw new IllegalStateException(\"save failed\", e);");
      f.empty_site = false;
      break;
    }
    case Fix::Secret:
      for (auto& field : f.fields) {
        if (field.rfind("private String token", 0) == 0) {
          field = "private String token = System.getenv(\"APP_TOKEN\");";
        }
      }
      f.secret_site = false;
      break;
    case Fix::Equals:
      replace_line(f.body("public boolean isAdmin"), "if (role == \"admin\") {",
                   "if (\"admin\".equals(role)) {");
      f.equals_site = false;
      break;
  }
}

void apply_neutral(JavaFile& f, Rng& rng) {
  const int n = ++f.counter;
  switch (rng.below(5)) {
    case 0:
      f.methods.push_back({"public int getCount" + std::to_string(n) + "()", {"return count;"}});
      break;
    case 1: {
      auto& b = f.body("public int compute");
      std::string next = "acc" + std::to_string(n);
      for (auto& line : b) {
        std::string out;
        std::size_t pos = 0;
        // Whole-word replacement of the local variable.
        while (pos < line.size()) {
          auto hit = line.find(f.local, pos);
          if (hit == std::string::npos) {
            out += line.substr(pos);
            break;
          }
          bool left = hit == 0 || !std::isalnum(static_cast<unsigned char>(line[hit - 1]));
          std::size_t end = hit + f.local.size();
          bool right = end >= line.size() || !std::isalnum(static_cast<unsigned char>(line[end]));
          out += line.substr(pos, hit - pos) + (left && right ? next : f.local);
          pos = end;
        }
        line = out;
      }
      f.local = next;
      break;
    }
    case 2:
      f.fields[0] = "private int limit = " + std::to_string(10 + rng.below(90)) + ";";
      break;
    case 3: {
      auto& b = f.body("public int compute");
      b.insert(b.begin(), "System.out.println(\"compute \" + base);");
      break;
    }
    default:
      f.fields.push_back("private int extra" + std::to_string(n) + ";");
      break;
  }
}

std::string data_block(const std::string& s) { return "data " + std::to_string(s.size()) + "\n" + s + "\n"; }

}  // namespace

Corpus generate(const fs::path& out, const Options& opt) {
  if (opt.n < 2 * pipeline::kFolds) {
    throw ValidationError("synth: n must be at least " + std::to_string(2 * pipeline::kFolds));
  }
  if (opt.n % 2) throw ValidationError("synth: n must be even (half the commits are positive)");
  if (opt.files == 0) throw ValidationError("synth: files must be >= 1");
  if (!(opt.signal >= 0 && opt.signal <= 1)) throw ValidationError("synth: signal outside [0, 1]");

  Rng rng(opt.seed);
  std::vector<JavaFile> files;
  for (std::size_t i = 0; i < opt.files; ++i) files.push_back(make_file(i));

  Labels labels(opt.n, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<long>(opt.n / 2), 1);
  rng.shuffle(labels);

  const std::string who = "Synth <synth@example.invalid> ";
  const long t0 = 1577836800;
  std::ostringstream stream;
  auto begin_commit = [&](std::size_t mark, const std::string& msg) {
    stream << "commit refs/heads/main\nmark :" << mark << "\n";
    stream << "author " << who << t0 + static_cast<long>(mark) * 3600 << " +0000\n";
    stream << "committer " << who << t0 + static_cast<long>(mark) * 3600 << " +0000\n";
    stream << data_block(msg);
    if (mark > 1) stream << "from :" << mark - 1 << "\n";
  };
  begin_commit(1, "Initial import");
  for (const auto& f : files) stream << "M 100644 inline " << f.path() << "\n" << data_block(f.render());

  const std::vector<Fix> kFixes = {Fix::Guard, Fix::Bounds, Fix::Broad, Fix::Empty, Fix::Secret, Fix::Equals};
  for (std::size_t c = 0; c < opt.n; ++c) {
    std::set<std::size_t> touched;
    auto random_file = [&] { return static_cast<std::size_t>(rng.below(files.size())); };
    // Two main edits and one neutral edit per commit.
    for (int e = 0; e < 2; ++e) {
      bool fix = labels[c] == 1 && rng.uniform() < opt.signal;
      Fix kind = kFixes[rng.below(kFixes.size())];
      if (fix) {
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < files.size(); ++i) {
          if (has_site(files[i], kind)) eligible.push_back(i);
        }
        if (eligible.empty()) {
          kind = Fix::Guard;
          eligible.push_back(random_file());
        }
        std::size_t i = rng.pick(eligible);
        apply_fix(files[i], kind);
        touched.insert(i);
      } else {
        std::size_t i = random_file();
        apply_neutral(files[i], rng);
        touched.insert(i);
      }
    }
    std::size_t i = random_file();
    apply_neutral(files[i], rng);
    touched.insert(i);

    begin_commit(c + 2, "Update " + files[*touched.begin()].name);
    for (std::size_t t : touched) {
      stream << "M 100644 inline " << files[t].path() << "\n" << data_block(files[t].render());
    }
  }
  const std::string import = stream.str();

  const fs::path root = fs::absolute(out);
  fs::path repo = root / "clones" / "synth-app";
  fs::path stamp = root / "clones" / ".synth-stamp";
  const std::string stamp_text = std::to_string(std::hash<std::string>{}(import)) + "\n";
  fs::path marks = root / "clones" / ".synth-marks";
  bool fresh = !(fs::exists(stamp) && read_file(stamp) == stamp_text && fs::exists(marks) &&
                 fs::exists(repo / ".git"));
  if (fresh) {
    fs::remove_all(repo);
    fs::create_directories(repo);
    auto init = run_process({"git", "init", "-q", "-b", "main", repo.string()});
    if (init.exit_code != 0) throw RuntimeError("git init failed: " + init.err);
    auto r = run_process({"git", "-C", repo.string(), "fast-import", "--quiet",
                          "--export-marks=" + marks.string()},
                         {}, {}, import);
    if (r.exit_code != 0) throw RuntimeError("git fast-import failed: " + r.err);
    auto co = run_process({"git", "-C", repo.string(), "checkout", "-q", "-f", "main"});
    if (co.exit_code != 0) throw RuntimeError("git checkout failed: " + co.err);
    write_file_if_changed(stamp, stamp_text);
  }

  std::map<std::size_t, std::string> sha_of;
  {
    std::istringstream in(read_file(marks));
    std::string mark, sha;
    while (in >> mark >> sha) sha_of[std::stoul(mark.substr(1))] = sha;
  }

  auto folds = pipeline::stratified_kfold(labels, pipeline::kFolds, opt.seed);
  Corpus corpus;
  corpus.repo = repo;
  for (std::size_t c = 0; c < opt.n; ++c) {
    CommitRecord r;
    r.repo_url = kRepoUrl;
    r.sha = sha_of.at(c + 2);
    r.label = labels[c];
    r.test_fold = folds[c];
    corpus.manifest.push_back(r);
  }
  write_file_if_changed(out / "manifest.csv", format_manifest(corpus.manifest));
  std::string planted = "analyzer,feature\n";
  for (const auto& p : planted_features()) planted += p.analyzer + "," + p.feature + "\n";
  write_file_if_changed(out / "planted_features.txt", planted);
  return corpus;
}

}  // namespace vfix::synth
