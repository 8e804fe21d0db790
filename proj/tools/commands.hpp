// Copyright 2026 The Interview Eval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Implementations of the `interview` subcommands. Kept out of main() so the
// test suites can drive them directly.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "interview/interview.hpp"
#include "interview/remote_candidate.hpp"

namespace interview::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kCandidateFailure = 3,
  kPartialSuccess = 4,
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// One per output directory. Written with an empty end time before any
// results, then rewritten when the command finishes.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> inputs;  // role -> path or inline spec
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string version = INTERVIEW_VERSION;
  std::string started;
  std::string finished;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    j["version"] = version;
    j["started"] = started;
    j["finished"] = finished;
    return j;
  }

  void write() const {
    std::ofstream out(fs::path(output_dir) / "manifest.json");
    out << to_json().dump(2) << '\n';
  }
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

// Candidate specs:
//   synthetic:ability=5.5,slope=1,floor=0.25[,id=name]
//   scripted:PATH[,id=name]
//   remote[:URL]   (URL, timeout and retries otherwise from the environment)
inline std::unique_ptr<Candidate> make_candidate(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "synthetic") {
    SyntheticProfile p;
    std::string id = "synthetic";
    for (const auto& item : KeyValues::split(rest)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("candidate spec: expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      KeyValues kv;
      kv.set(key, value);
      if (key == "ability") p.ability = kv.get_double(key, 0);
      else if (key == "slope") p.slope = kv.get_double(key, 0);
      else if (key == "floor") p.floor = kv.get_double(key, 0);
      else if (key == "id") id = value;
      else throw InputError("candidate spec: unknown key '" + key + "'");
    }
    return std::make_unique<SyntheticCandidate>(id, p);
  }
  if (kind == "scripted") {
    auto parts = KeyValues::split(rest);
    if (parts.empty()) throw InputError("scripted candidate needs a file path");
    std::string id = fs::path(parts[0]).stem().string();
    if (parts.size() > 1 && parts[1].rfind("id=", 0) == 0) id = parts[1].substr(3);
    auto in = open_input(parts[0]);
    return std::make_unique<ScriptedCandidate>(ScriptedCandidate::load(id, in));
  }
  if (kind == "remote") {
    RemoteOptions o = RemoteOptions::from_env();
    if (!rest.empty()) o.base_url = rest;
    return std::make_unique<RemoteCandidate>("remote", o);
  }
  throw InputError("unknown candidate kind '" + kind + "' (synthetic, scripted, remote)");
}

inline std::vector<std::string> parse_panel(const std::string& spec) {
  auto ids = KeyValues::split(spec);
  if (ids.empty()) throw InputError("panel spec is empty");
  return ids;
}

inline std::shared_ptr<const Catalogue> load_catalogue(const std::string& path) {
  auto in = open_input(path);
  return std::make_shared<const Catalogue>(read_questions(in));
}

// ---------------------------------------------------------------- annotate

struct AnnotateOptions {
  std::string questions_path;
  std::string verdicts_path;
  std::string out_path;
};

inline int cmd_annotate(const AnnotateOptions& opt, std::ostream& log = std::cout) {
  auto qin = open_input(opt.questions_path);
  auto questions = read_questions(qin, /*require_level=*/false);
  auto vin = open_input(opt.verdicts_path);
  const VerdictLoad load = read_verdicts(vin);
  if (load.matrix.model_ids.empty()) {
    log << "error: no verdicts in '" << opt.verdicts_path << "'\n";
    return kInputError;
  }
  const auto levels = annotate_difficulty(load.matrix);

  std::vector<Question> annotated;
  std::vector<std::string> missing;
  std::map<int, int> histogram;
  for (auto& q : questions) {
    auto it = levels.find(q.id);
    if (it == levels.end()) {
      missing.push_back(q.id);
      continue;
    }
    q.level = it->second;
    ++histogram[q.level];
    annotated.push_back(std::move(q));
  }
  auto out = open_output(opt.out_path);
  write_questions(out, annotated);

  log << "annotated " << annotated.size() << " questions with " << load.matrix.model_ids.size()
      << " reference models\nlevel,count\n";
  for (const auto& [level, count] : histogram) log << level << ',' << count << '\n';
  if (!missing.empty()) {
    log << "skipped " << missing.size() << " question(s) without a complete verdict set:\n";
    for (const auto& id : missing) log << "  " << id << '\n';
    return kInputError;
  }
  return kOk;
}

// --------------------------------------------------------------- interview

struct InterviewOptions {
  std::string pool_path;
  std::string candidate = "synthetic:ability=5.5";
  std::string panel = "interviewer-1,interviewer-2,interviewer-3";
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> budget;
  std::string out_dir = "interview-out";
};

inline int cmd_interview(const InterviewOptions& opt, std::ostream& log = std::cout) {
  InterviewConfig config;
  if (!opt.config_path.empty()) {
    auto in = open_input(opt.config_path);
    const auto kv = KeyValues::parse(in);
    kv.require_known(interview_config_keys());
    config = interview_config_from(kv);
  }
  if (opt.seed) config.seed = *opt.seed;
  if (opt.budget) config.budget = *opt.budget;
  config.validate();
  auto catalogue = load_catalogue(opt.pool_path);
  if (catalogue->empty()) throw InputError("pool '" + opt.pool_path + "' is empty");
  QuestionPool pool(catalogue, derive_seed(config.seed, "pool"));
  auto candidate = make_candidate(opt.candidate);
  Panel panel(parse_panel(opt.panel), config.alpha);

  RunManifest manifest;
  manifest.command = "interview";
  manifest.inputs = {{"pool", opt.pool_path}, {"candidate", opt.candidate}, {"panel", opt.panel}};
  if (!opt.config_path.empty()) manifest.inputs["config"] = opt.config_path;
  manifest.seed = config.seed;
  manifest.output_dir = opt.out_dir;
  manifest.started = utc_timestamp();
  fs::create_directories(opt.out_dir);
  manifest.write();

  InterviewConfig run_config = config;
  run_config.seed = derive_seed(config.seed, "interview");

  auto write_results = [&](const InterviewOutcome& outcome, const std::string& error) {
    auto tout = open_output(fs::path(opt.out_dir) / "transcript.jsonl");
    write_transcript(tout, outcome.transcript);
    auto summary = outcome_summary(outcome);
    summary["config"]["seed"] = config.seed;
    if (!error.empty()) summary["error"] = error;
    auto oout = open_output(fs::path(opt.out_dir) / "outcome.json");
    oout << summary.dump(2) << '\n';
  };

  int code = kOk;
  try {
    const InterviewOutcome outcome = run_interview(pool, *candidate, panel, run_config);
    write_results(outcome, "");
    log << "candidate " << outcome.candidate_id << ": asked " << outcome.questions_asked
        << " (+" << outcome.pre_questions << " pre), raw " << outcome.raw_score << ", weighted "
        << outcome.weighted_score << ", credit " << outcome.credit_score
        << (outcome.early_stop ? " [pool exhausted]" : "") << '\n';
  } catch (const InterviewAborted& e) {
    write_results(e.partial(), e.what());
    log << "error: " << e.what() << " (partial transcript written)\n";
    code = kCandidateFailure;
  }
  manifest.finished = utc_timestamp();
  manifest.write();
  return code;
}

// ------------------------------------------------- baseline / ground-truth

struct SamplingOptions {
  std::string pool_path;
  std::string candidate = "synthetic:ability=5.5";
  std::uint64_t seed = 0;
  int budget = 50;
};

inline int cmd_baseline(const SamplingOptions& opt, std::ostream& out = std::cout) {
  auto catalogue = load_catalogue(opt.pool_path);
  auto candidate = make_candidate(opt.candidate);
  Rng rng = Rng::stream(opt.seed, "baseline");
  const double acc = random_baseline(*catalogue, *candidate, opt.budget, rng);
  nlohmann::ordered_json j{{"candidate_id", candidate->id()},
                           {"budget", opt.budget},
                           {"seed", opt.seed},
                           {"accuracy", acc}};
  out << j.dump() << '\n';
  return kOk;
}

inline int cmd_ground_truth(const SamplingOptions& opt, std::ostream& out = std::cout) {
  auto catalogue = load_catalogue(opt.pool_path);
  auto candidate = make_candidate(opt.candidate);
  Rng rng = Rng::stream(opt.seed, "ground-truth");
  const GroundTruth gt = full_coverage(*catalogue, *candidate, rng);
  nlohmann::ordered_json profile = nlohmann::ordered_json::object();
  for (const auto& [level, acc] : gt.profile) profile[std::to_string(level)] = acc;
  nlohmann::ordered_json j{{"candidate_id", candidate->id()},
                           {"questions", gt.asked},
                           {"seed", opt.seed},
                           {"accuracy", gt.accuracy},
                           {"profile", profile}};
  out << j.dump() << '\n';
  return kOk;
}

// ----------------------------------------------------------------- compare

inline const std::set<std::string>& experiment_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = interview_config_keys();
    k.insert({"budgets", "seeds", "seed_base", "seed_list", "candidates", "ability_min",
              "ability_max", "slope", "floor", "per_level", "categories", "options",
              "benchmark_seed", "pool", "score_kind", "panel", "parallel"});
    return k;
  }();
  return keys;
}

struct CompareOptions {
  std::string spec_path;  // empty: built-in desk-scale defaults
  std::optional<std::string> budgets;
  std::optional<int> seeds;
  std::optional<std::int64_t> seed_base;
  std::optional<int> candidates;
  std::optional<std::string> score_kind;
  std::optional<std::string> panel;
  std::optional<std::string> pool_path;
  std::optional<int> parallel;
  std::string out_dir = "runs";
};

struct LoadedExperiment {
  ExperimentSpec spec;
  std::shared_ptr<const Catalogue> catalogue;
  std::string canonical;  // effective settings, one "key = value" per line
};

// Effective experiment from a spec file plus command-line overrides.
inline LoadedExperiment load_experiment(const CompareOptions& opt) {
  KeyValues kv;
  if (!opt.spec_path.empty()) {
    auto in = open_input(opt.spec_path);
    kv = KeyValues::parse(in);
    kv.require_known(experiment_keys());
  }
  if (opt.budgets) kv.set("budgets", *opt.budgets);
  if (opt.seeds || opt.seed_base) kv.erase("seed_list");
  if (opt.seeds) kv.set("seeds", std::to_string(*opt.seeds));
  if (opt.seed_base) kv.set("seed_base", std::to_string(*opt.seed_base));
  if (opt.candidates) kv.set("candidates", std::to_string(*opt.candidates));
  if (opt.score_kind) kv.set("score_kind", *opt.score_kind);
  if (opt.panel) kv.set("panel", *opt.panel);
  if (opt.pool_path) kv.set("pool", *opt.pool_path);

  LoadedExperiment ex;
  ExperimentSpec& spec = ex.spec;
  spec.budgets.clear();
  for (auto b : kv.get_int_list("budgets", {20, 30, 50, 80, 100})) spec.budgets.push_back(static_cast<int>(b));
  if (kv.has("seed_list")) {
    for (auto s : kv.get_int_list("seed_list", {})) spec.seeds.push_back(static_cast<std::uint64_t>(s));
  } else {
    const auto count = kv.get_int("seeds", 100);
    if (count < 1) throw InputError("seeds must be >= 1");
    spec.seeds = seed_range(static_cast<std::uint64_t>(kv.get_int("seed_base", 0)),
                            static_cast<std::size_t>(count));
  }
  PopulationSpec pop;
  pop.count = static_cast<int>(kv.get_int("candidates", pop.count));
  pop.ability_min = kv.get_double("ability_min", pop.ability_min);
  pop.ability_max = kv.get_double("ability_max", pop.ability_max);
  pop.slope = kv.get_double("slope", pop.slope);
  pop.floor = kv.get_double("floor", pop.floor);
  spec.candidates = synthetic_candidates(synthetic_population(pop));

  InterviewConfig base;
  base.budget = *std::max_element(spec.budgets.begin(), spec.budgets.end());
  spec.interview = interview_config_from(kv, base);
  spec.score_kind = parse_score_kind(kv.get_string("score_kind", "credit"));
  if (kv.has("panel")) spec.panel_ids = parse_panel(kv.get_string("panel", ""));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  spec.parallel = static_cast<int>(kv.get_int("parallel", hw));
  if (opt.parallel) spec.parallel = *opt.parallel;

  std::ostringstream canon;
  auto list = [](const auto& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
  };
  canon << "budgets = " << list(spec.budgets) << '\n'
        << "seed_list = " << list(spec.seeds) << '\n'
        << "candidates = " << pop.count << '\n'
        << "ability_min = " << format_double(pop.ability_min) << '\n'
        << "ability_max = " << format_double(pop.ability_max) << '\n'
        << "slope = " << format_double(pop.slope) << '\n'
        << "floor = " << format_double(pop.floor) << '\n'
        << "score_kind = " << score_kind_name(spec.score_kind) << '\n'
        << "panel = " << list(spec.panel_ids) << '\n';
  InterviewConfig shown = spec.interview;
  shown.budget = base.budget;
  canon << to_key_values(shown);

  if (kv.has("pool")) {
    const std::string path = kv.get_string("pool", "");
    auto in = open_input(path);
    std::stringstream content;
    content << in.rdbuf();
    canon << "pool_fnv1a = " << hex64(fnv1a(content.str())) << '\n';
    content.seekg(0);
    ex.catalogue = std::make_shared<const Catalogue>(read_questions(content));
  } else {
    SynthSpec synth;
    synth.per_level = static_cast<int>(kv.get_int("per_level", synth.per_level));
    synth.categories = static_cast<int>(kv.get_int("categories", synth.categories));
    synth.options = static_cast<int>(kv.get_int("options", synth.options));
    synth.seed = static_cast<std::uint64_t>(kv.get_int("benchmark_seed", 0));
    canon << "per_level = " << synth.per_level << '\n'
          << "categories = " << synth.categories << '\n'
          << "options = " << synth.options << '\n'
          << "benchmark_seed = " << synth.seed << '\n';
    ex.catalogue = std::make_shared<const Catalogue>(synth_benchmark(synth));
  }
  ex.canonical = canon.str();
  return ex;
}

inline void write_report_files(const fs::path& dir, const ComparisonReport& report) {
  {
    auto out = open_output(dir / "report.csv");
    write_table_csv(out, report);
  }
  {
    auto out = open_output(dir / "curve.csv");
    write_curve_csv(out, report);
  }
  {
    auto out = open_output(dir / "report.json");
    out << to_json(report).dump(2) << '\n';
  }
}

// Returns the run directory through `run_dir` when non-null.
inline int cmd_compare(const CompareOptions& opt, std::ostream& log = std::cout,
                       fs::path* run_dir = nullptr) {
  LoadedExperiment ex = load_experiment(opt);
  const fs::path dir = fs::path(opt.out_dir) / ("run-" + hex64(fnv1a(ex.canonical)));
  if (run_dir) *run_dir = dir;
  fs::create_directories(dir);

  RunManifest manifest;
  manifest.command = "compare";
  if (!opt.spec_path.empty()) manifest.inputs["spec"] = opt.spec_path;
  manifest.inputs["effective_spec"] = ex.canonical;
  manifest.seed = ex.spec.seeds.front();
  manifest.output_dir = dir.string();
  manifest.started = utc_timestamp();
  manifest.write();
  {
    auto out = open_output(dir / "spec.txt");
    out << ex.canonical;
  }

  const ComparisonReport report = run_comparison(ex.spec, ex.catalogue);
  write_report_files(dir, report);
  manifest.finished = utc_timestamp();
  manifest.write();

  write_table_csv(log, report);
  log << "pooled sign test (SRCC, interview > random): " << report.sign_pooled.wins << " wins, "
      << report.sign_pooled.losses << " losses, p = " << report.sign_pooled.p_value << '\n'
      << "report written to " << dir.string() << '\n';
  if (report.has_invalid_cells()) {
    log << "warning: some correlations were undefined; affected cells are flagged\n";
    return kPartialSuccess;
  }
  return kOk;
}

// -------------------------------------------------------------- synthesize

struct SynthesizeOptions {
  SynthSpec benchmark;
  std::string out_path = "questions.jsonl";
  std::string verdicts_out;  // optional reference-annotator verdicts
  bool strip_levels = false; // emit raw records for `annotate`
};

inline int cmd_synthesize(const SynthesizeOptions& opt, std::ostream& log = std::cout) {
  auto questions = synth_benchmark(opt.benchmark);
  if (!opt.verdicts_out.empty()) {
    const auto matrix = simulate_verdicts(questions, reference_annotators(), opt.benchmark.seed);
    auto out = open_output(opt.verdicts_out);
    for (std::size_t q = 0; q < matrix.question_ids.size(); ++q) {
      for (std::size_t m = 0; m < matrix.model_ids.size(); ++m) {
        nlohmann::ordered_json j{{"question_id", matrix.question_ids[q]},
                                 {"model_id", matrix.model_ids[m]},
                                 {"correct", matrix.at(q, m)}};
        out << j.dump() << '\n';
      }
    }
  }
  auto out = open_output(opt.out_path);
  for (const auto& q : questions) {
    auto j = to_json(q);
    if (opt.strip_levels) j.erase("level");
    out << j.dump() << '\n';
  }
  log << "wrote " << questions.size() << " questions to " << opt.out_path << '\n';
  return kOk;
}

// ------------------------------------------------------------------ report

struct ReportOptions {
  std::string report_path;
  std::string out_dir;
};

inline int cmd_report(const ReportOptions& opt, std::ostream& log = std::cout) {
  auto in = open_input(opt.report_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  const ComparisonReport report = report_from_json(j);
  if (opt.out_dir.empty()) {
    write_table_csv(log, report);
  } else {
    write_report_files(opt.out_dir, report);
    log << "report files written to " << opt.out_dir << '\n';
  }
  return kOk;
}

}  // namespace interview::cli
