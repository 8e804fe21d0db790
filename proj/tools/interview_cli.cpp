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

// Command-line entry point: annotate, interview, baseline, ground-truth,
// compare, synthesize, report.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = interview::cli;

int main(int argc, char** argv) {
  CLI::App app{"Adaptive multi-interviewer evaluation of models on a difficulty-graded question pool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", INTERVIEW_VERSION);

  cli::AnnotateOptions annotate;
  auto* a = app.add_subcommand("annotate", "Assign difficulty levels from reference-model verdicts");
  a->add_option("--questions", annotate.questions_path, "Question records (levels optional)")->required();
  a->add_option("--verdicts", annotate.verdicts_path, "{question_id, model_id, correct} records")->required();
  a->add_option("--out", annotate.out_path, "Annotated question file")->required();

  cli::InterviewOptions interview;
  std::uint64_t interview_seed = 0;
  int interview_budget = 0;
  auto* i = app.add_subcommand("interview", "Interview one candidate");
  i->add_option("--pool", interview.pool_path, "Question file")->required();
  i->add_option("--candidates,--candidate", interview.candidate,
                "synthetic:ability=..,slope=..,floor=.. | scripted:PATH | remote[:URL]")
      ->capture_default_str();
  i->add_option("--panel", interview.panel, "Comma-separated interviewer ids")->capture_default_str();
  i->add_option("--config", interview.config_path, "Interview config (key = value)");
  auto* iseed = i->add_option("--seed", interview_seed, "Master seed");
  auto* ibudget = i->add_option("--budget", interview_budget, "Formal-interview question budget");
  i->add_option("--out", interview.out_dir, "Output directory")->capture_default_str();

  cli::SamplingOptions baseline;
  auto* b = app.add_subcommand("baseline", "Random-sampling accuracy of one candidate");
  b->add_option("--pool", baseline.pool_path, "Question file")->required();
  b->add_option("--candidates,--candidate", baseline.candidate, "Candidate spec")->capture_default_str();
  b->add_option("--seed", baseline.seed, "Seed")->capture_default_str();
  b->add_option("--budget", baseline.budget, "Questions to sample")->capture_default_str();

  cli::SamplingOptions truth;
  auto* g = app.add_subcommand("ground-truth", "Full-coverage accuracy of one candidate");
  g->add_option("--pool", truth.pool_path, "Question file")->required();
  g->add_option("--candidates,--candidate", truth.candidate, "Candidate spec")->capture_default_str();
  g->add_option("--seed", truth.seed, "Seed")->capture_default_str();

  cli::CompareOptions compare;
  std::string cmp_budgets, cmp_score, cmp_panel, cmp_pool;
  int cmp_seeds = 0, cmp_candidates = 0, cmp_parallel = 0;
  auto* c = app.add_subcommand("compare", "Interview vs. random sampling against full coverage");
  c->add_option("--config,--spec", compare.spec_path, "Experiment spec (key = value)");
  auto* cb = c->add_option("--budgets", cmp_budgets, "Comma-separated budgets");
  std::int64_t cmp_seed_base = 0;
  auto* cs = c->add_option("--seeds", cmp_seeds, "Number of seeds");
  auto* csb = c->add_option("--seed", cmp_seed_base, "First seed");
  auto* cc = c->add_option("--candidates", cmp_candidates, "Number of synthetic candidates");
  auto* ck = c->add_option("--score-kind", cmp_score, "raw | weighted | credit");
  auto* cpn = c->add_option("--panel", cmp_panel, "Comma-separated interviewer ids");
  auto* cpo = c->add_option("--pool", cmp_pool, "Question file (default: synthetic benchmark)");
  auto* cpa = c->add_option("--parallel", cmp_parallel, "Worker threads");
  c->add_option("--out", compare.out_dir, "Base output directory")->capture_default_str();

  cli::SynthesizeOptions synth;
  auto* s = app.add_subcommand("synthesize", "Generate a synthetic benchmark");
  s->add_option("--per-level", synth.benchmark.per_level, "Questions per level")->capture_default_str();
  s->add_option("--categories", synth.benchmark.categories, "Categories")->capture_default_str();
  s->add_option("--options", synth.benchmark.options, "Options per question (0 = open-ended)")->capture_default_str();
  s->add_option("--seed", synth.benchmark.seed, "Seed")->capture_default_str();
  s->add_option("--out", synth.out_path, "Question file")->capture_default_str();
  s->add_option("--verdicts-out", synth.verdicts_out, "Also write reference-annotator verdicts");
  s->add_flag("--raw", synth.strip_levels, "Omit levels (input for annotate)");

  cli::ReportOptions report;
  auto* r = app.add_subcommand("report", "Re-emit table and curve files from a report.json");
  r->add_option("--report", report.report_path, "report.json")->required();
  r->add_option("--out", report.out_dir, "Output directory (default: print table)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (a->parsed()) return cli::cmd_annotate(annotate);
    if (i->parsed()) {
      if (*iseed) interview.seed = interview_seed;
      if (*ibudget) interview.budget = interview_budget;
      return cli::cmd_interview(interview);
    }
    if (b->parsed()) return cli::cmd_baseline(baseline);
    if (g->parsed()) return cli::cmd_ground_truth(truth);
    if (c->parsed()) {
      if (*cb) compare.budgets = cmp_budgets;
      if (*cs) compare.seeds = cmp_seeds;
      if (*csb) compare.seed_base = cmp_seed_base;
      if (*cc) compare.candidates = cmp_candidates;
      if (*ck) compare.score_kind = cmp_score;
      if (*cpn) compare.panel = cmp_panel;
      if (*cpo) compare.pool_path = cmp_pool;
      if (*cpa) compare.parallel = cmp_parallel;
      return cli::cmd_compare(compare);
    }
    if (s->parsed()) return cli::cmd_synthesize(synth);
    if (r->parsed()) return cli::cmd_report(report);
  } catch (const interview::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  } catch (const interview::CandidateUnavailable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kCandidateFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFailure;
  }
  return cli::kFailure;
}
