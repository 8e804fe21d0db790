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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"

namespace interview::cli {
namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("interview-cli-" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string synth(int per_level, bool raw = false) {
    SynthesizeOptions o;
    o.benchmark = {per_level, 3, 4, 5};
    o.out_path = (dir_ / (raw ? "raw.jsonl" : "pool.jsonl")).string();
    o.verdicts_out = raw ? (dir_ / "verdicts.jsonl").string() : "";
    o.strip_levels = raw;
    std::ostringstream log;
    EXPECT_EQ(cmd_synthesize(o, log), kOk);
    return o.out_path;
  }

  int run_binary(const std::string& args) {
    const std::string cmd = std::string(INTERVIEW_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST_F(CliTest, AnnotateAssignsLevelsAndHistogram) {
  const auto raw = synth(20, /*raw=*/true);
  AnnotateOptions o{raw, (dir_ / "verdicts.jsonl").string(), (dir_ / "annotated.jsonl").string()};
  std::ostringstream log;
  ASSERT_EQ(cmd_annotate(o, log), kOk);
  std::ifstream in(o.out_path);
  const auto qs = read_questions(in);
  ASSERT_EQ(qs.size(), 200u);
  for (const auto& q : qs) EXPECT_TRUE(valid_level(q.level));

  int total = 0;
  std::istringstream lines(log.str());
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || !std::isdigit(static_cast<unsigned char>(line[0]))) continue;
    total += std::stoi(line.substr(line.find(',') + 1));
  }
  EXPECT_EQ(total, 200);
}

TEST_F(CliTest, AnnotateRejectsEmptyAndIncompleteVerdicts) {
  const auto raw = synth(2, /*raw=*/true);
  {
    std::ofstream(dir_ / "empty.jsonl");
  }
  std::ostringstream log;
  EXPECT_EQ(cmd_annotate({raw, (dir_ / "empty.jsonl").string(), (dir_ / "a.jsonl").string()}, log),
            kInputError);

  // drop one verdict line: that question is reported and skipped
  std::ifstream in(dir_ / "verdicts.jsonl");
  std::ofstream out(dir_ / "partial.jsonl");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) out << line << '\n';
  out.close();
  log.str("");
  EXPECT_EQ(cmd_annotate({raw, (dir_ / "partial.jsonl").string(), (dir_ / "b.jsonl").string()}, log),
            kInputError);
  EXPECT_NE(log.str().find("skipped 1"), std::string::npos);
}

TEST_F(CliTest, InterviewWritesDeterministicArtifacts) {
  const auto pool = synth(30);
  InterviewOptions o;
  o.pool_path = pool;
  o.candidate = "synthetic:ability=6.5,slope=1.5,floor=0.25,id=cand";
  o.seed = 42;
  o.budget = 20;
  o.out_dir = (dir_ / "a").string();
  std::ostringstream log;
  ASSERT_EQ(cmd_interview(o, log), kOk);
  o.out_dir = (dir_ / "b").string();
  ASSERT_EQ(cmd_interview(o, log), kOk);

  EXPECT_EQ(slurp(dir_ / "a" / "transcript.jsonl"), slurp(dir_ / "b" / "transcript.jsonl"));
  const auto outcome = nlohmann::json::parse(slurp(dir_ / "a" / "outcome.json"));
  EXPECT_EQ(outcome.at("questions_asked").get<int>(), 20);
  EXPECT_EQ(outcome.at("config").at("seed").get<std::uint64_t>(), 42u);
  std::ifstream tin(dir_ / "a" / "transcript.jsonl");
  const auto transcript = read_transcript(tin);
  EXPECT_EQ(transcript.size(), 23u);
  for (const auto& e : transcript) EXPECT_TRUE(valid_level(e.level));
  const auto manifest = nlohmann::json::parse(slurp(dir_ / "a" / "manifest.json"));
  EXPECT_EQ(manifest.at("command"), "interview");
  EXPECT_FALSE(manifest.at("finished").get<std::string>().empty());

  o.seed = 43;
  o.out_dir = (dir_ / "c").string();
  ASSERT_EQ(cmd_interview(o, log), kOk);
  EXPECT_NE(slurp(dir_ / "a" / "transcript.jsonl"), slurp(dir_ / "c" / "transcript.jsonl"));
}

TEST_F(CliTest, InterviewReadsConfigFile) {
  const auto pool = synth(30);
  std::ofstream(dir_ / "iv.conf") << "# small run\nbudget = 12\nround_size = 4\nseed = 3\n";
  InterviewOptions o;
  o.pool_path = pool;
  o.config_path = (dir_ / "iv.conf").string();
  o.out_dir = (dir_ / "out").string();
  std::ostringstream log;
  ASSERT_EQ(cmd_interview(o, log), kOk);
  const auto outcome = nlohmann::json::parse(slurp(dir_ / "out" / "outcome.json"));
  EXPECT_EQ(outcome.at("questions_asked").get<int>(), 12);
  EXPECT_EQ(outcome.at("level_history").size(), 3u);

  std::ofstream(dir_ / "bad.conf") << "budgte = 12\n";
  o.config_path = (dir_ / "bad.conf").string();
  EXPECT_THROW(cmd_interview(o, log), InputError);
}

TEST_F(CliTest, CompareDefaultShapeAndOverrides) {
  std::ofstream(dir_ / "exp.conf") << "seeds = 3\ncandidates = 6\nper_level = 20\nparallel = 1\n";
  CompareOptions o;
  o.spec_path = (dir_ / "exp.conf").string();
  o.out_dir = (dir_ / "runs").string();
  std::ostringstream log;
  fs::path run;
  ASSERT_EQ(cmd_compare(o, log, &run), kOk);
  const auto report = report_from_json(nlohmann::json::parse(slurp(run / "report.json")));
  EXPECT_EQ(report.budgets, (std::vector<int>{20, 30, 50, 80, 100}));
  EXPECT_EQ(report.cells.size(), 10u);
  EXPECT_EQ(report.seeds.size(), 3u);
  for (const auto& c : report.cells) EXPECT_EQ(c.per_seed.size(), 3u);
  EXPECT_TRUE(fs::exists(run / "curve.csv"));
  EXPECT_TRUE(fs::exists(run / "manifest.json"));

  // the improvement row is the mean of the per-budget SRCC differences
  double sum = 0;
  for (int b : report.budgets) {
    sum += report.cell(b, Strategy::kInterview).mean.srcc - report.cell(b, Strategy::kRandom).mean.srcc;
  }
  EXPECT_NEAR(report.avg_improvement_pp.srcc, 100 * sum / 5, 1e-9);
  const auto csv = slurp(run / "report.csv");
  char expected[64];
  std::snprintf(expected, sizeof expected, "avg_improvement_pp,interview-random,%.6f,",
                report.avg_improvement_pp.srcc);
  EXPECT_NE(csv.find(expected), std::string::npos);

  o.budgets = "30";
  fs::path run30;
  ASSERT_EQ(cmd_compare(o, log, &run30), kOk);
  EXPECT_NE(run30, run);
  const auto r30 = report_from_json(nlohmann::json::parse(slurp(run30 / "report.json")));
  EXPECT_EQ(r30.budgets, std::vector<int>{30});
  EXPECT_EQ(r30.cells.size(), 2u);
}

TEST_F(CliTest, CompareIsByteReproducible) {
  CompareOptions o;
  o.budgets = "20,40";
  o.seeds = 2;
  o.candidates = 5;
  o.pool_path = synth(20);
  o.parallel = 2;
  o.out_dir = (dir_ / "one").string();
  std::ostringstream log;
  fs::path a, b;
  ASSERT_EQ(cmd_compare(o, log, &a), kOk);
  o.out_dir = (dir_ / "two").string();
  o.parallel = 1;  // thread count is not part of the result
  ASSERT_EQ(cmd_compare(o, log, &b), kOk);
  EXPECT_EQ(a.filename(), b.filename());
  for (const char* f : {"report.csv", "curve.csv", "report.json", "spec.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST_F(CliTest, ReportRegeneratesTables) {
  CompareOptions o;
  o.budgets = "20";
  o.seeds = 2;
  o.candidates = 4;
  o.pool_path = synth(10);
  o.parallel = 1;
  o.out_dir = (dir_ / "runs").string();
  std::ostringstream log;
  fs::path run;
  ASSERT_EQ(cmd_compare(o, log, &run), kOk);
  ReportOptions r{(run / "report.json").string(), (dir_ / "regen").string()};
  fs::create_directories(r.out_dir);
  ASSERT_EQ(cmd_report(r, log), kOk);
  EXPECT_EQ(slurp(run / "report.csv"), slurp(dir_ / "regen" / "report.csv"));
  EXPECT_EQ(slurp(run / "curve.csv"), slurp(dir_ / "regen" / "curve.csv"));
}

TEST(ConfigFileTest, ParsesCommentsListsAndBooleans) {
  const auto kv = KeyValues::parse(
      "# header\n  alpha = 0.3   # trailing\n\nbudgets = 20, 30 ,50\nper_round_accuracy = true\n");
  EXPECT_DOUBLE_EQ(kv.get_double("alpha", 0), 0.3);
  EXPECT_EQ(kv.get_int_list("budgets", {}), (std::vector<std::int64_t>{20, 30, 50}));
  EXPECT_TRUE(kv.get_bool("per_round_accuracy", false));
  EXPECT_EQ(kv.get_int("missing", 7), 7);
  EXPECT_THROW(KeyValues::parse("a = 1\na = 2\n"), InputError);
  EXPECT_THROW(KeyValues::parse("no equals sign\n"), InputError);
  EXPECT_THROW(KeyValues::parse("budget = ten\n").get_int("budget", 0), InputError);
  EXPECT_THROW(kv.require_known({"alpha"}), InputError);
}

TEST(ConfigFileTest, InterviewConfigRoundTrip) {
  InterviewConfig c;
  c.alpha = 0.1;
  c.beta = 0.6;
  c.n_level = 6;
  c.budget = 77;
  c.seed = 123456789;
  c.per_question_weights = true;
  const auto text = to_key_values(c);
  EXPECT_NE(text.find("alpha = 0.1\n"), std::string::npos);
  EXPECT_EQ(interview_config_from(KeyValues::parse(text)), c);
  EXPECT_THROW(interview_config_from(KeyValues::parse("beta = 1.5\n")), InputError);
}

TEST(CandidateSpecTest, ParsesKinds) {
  auto s = make_candidate("synthetic:ability=3,slope=2,floor=0.1,id=x");
  EXPECT_EQ(s->id(), "x");
  EXPECT_THROW(make_candidate("oracle:foo"), InputError);
  EXPECT_THROW(make_candidate("synthetic:ability=abc"), InputError);
  EXPECT_THROW(make_candidate("scripted:/nonexistent/file.jsonl"), InputError);
}

TEST_F(CliTest, BinaryExitCodes) {
  const auto pool = synth(10);
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("interview --pool " + pool + " --budget 9 --seed 1 --out " +
                       (dir_ / "iv").string()),
            kOk);
  EXPECT_TRUE(fs::exists(dir_ / "iv" / "transcript.jsonl"));
  EXPECT_EQ(run_binary("interview --pool " + (dir_ / "missing.jsonl").string() + " --out " +
                       (dir_ / "bad").string()),
            kInputError);
  EXPECT_FALSE(fs::exists(dir_ / "bad"));
  EXPECT_EQ(run_binary("baseline --pool " + pool + " --budget 1000"), kInputError);
  EXPECT_EQ(run_binary("baseline --pool " + pool + " --budget 10"), kOk);
  EXPECT_NE(slurp(dir_ / "stdout.txt").find("\"accuracy\""), std::string::npos);
  EXPECT_EQ(run_binary("interview --pool " + pool +
                       " --candidate remote:http://127.0.0.1:1 --budget 9 --out " +
                       (dir_ / "remote").string()),
            kCandidateFailure);
  EXPECT_TRUE(fs::exists(dir_ / "remote" / "outcome.json"));
  EXPECT_NE(run_binary("no-such-command"), 0);
}

}  // namespace
}  // namespace interview::cli
