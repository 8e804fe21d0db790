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

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "interview/participants.hpp"
#include "interview/remote_candidate.hpp"

namespace interview {
namespace {

Question option_question(int level, const std::string& key = "C") {
  return Question{"q" + std::to_string(level), "cat", level, "prompt",
                  {{"A", "Paris"}, {"B", "Lyon"}, {"C", "Nice"}, {"D", "Lille"}}, key, {}};
}

int correct_in(SyntheticCandidate& c, const Question& q, int trials, std::uint64_t seed) {
  Rng rng(seed);
  int ok = 0;
  for (int i = 0; i < trials; ++i) ok += judge(q, c.answer(q, rng)).correct;
  return ok;
}

TEST(SyntheticCandidateTest, StrongCandidateAlmostAlwaysRight) {
  SyntheticCandidate c("strong", {11.0, 10.0, 0.0});
  EXPECT_GE(correct_in(c, option_question(1), 1000, 2024), 990);
}

TEST(SyntheticCandidateTest, WeakCandidateAlwaysWrong) {
  SyntheticCandidate c("weak", {-10.0, 10.0, 0.0});
  EXPECT_EQ(correct_in(c, option_question(10), 1000, 2024), 0);
}

TEST(SyntheticCandidateTest, WrongRepliesNeverNameTheKey) {
  SyntheticCandidate c("weak", {-10.0, 10.0, 0.0});
  Rng rng(5);
  std::set<std::string> seen;
  for (int i = 0; i < 400; ++i) {
    const auto a = c.answer(option_question(8, "B"), rng);
    EXPECT_NE(a.answer, "B");
    seen.insert(a.answer);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"A", "C", "D"}));
  Question open{"open", "cat", 3, "p", {}, "42", {}};
  EXPECT_EQ(c.answer(open, rng).answer, std::string(kWrongToken));
}

TEST(SyntheticCandidateTest, ProfileFormula) {
  SyntheticProfile p{5.0, 2.0, 0.25};
  EXPECT_DOUBLE_EQ(p.p_correct(5.0), 0.25 + 0.75 * 0.5);
  EXPECT_NEAR(p.p_correct(6.0), 0.25 + 0.75 / (1.0 + std::exp(2.0)), 1e-15);
  EXPECT_THROW((SyntheticCandidate{"bad", {1.0, 0.0, 0.0}}), InputError);
  EXPECT_THROW((SyntheticCandidate{"bad", {1.0, 1.0, 1.0}}), InputError);
}

// Empirical accuracy does not rise with difficulty beyond 3 standard errors.
TEST(SyntheticCandidateTest, MonotoneInLevel) {
  for (const SyntheticProfile p : {SyntheticProfile{5.5, 1.0, 0.25}, SyntheticProfile{3.0, 0.4, 0.0},
                                   SyntheticProfile{8.0, 3.0, 0.5}}) {
    SyntheticCandidate c("p", p);
    double prev = 2.0;
    for (int level = 1; level <= 10; ++level) {
      const double acc = correct_in(c, option_question(level), 1000, 77 + level) / 1000.0;
      const double se = std::sqrt(std::max(acc * (1 - acc), 1e-4) / 1000.0);
      EXPECT_LE(acc, prev + 3 * std::sqrt(2.0) * se) << "level " << level;
      prev = acc;
    }
  }
}

TEST(ScriptedCandidateTest, LooksUpTable) {
  ScriptedCandidate c("s", {{"q1", "B"}});
  Rng rng(1);
  Question q1{"q1", "c", 3, "p", {}, "B", {}};
  EXPECT_EQ(c.answer(q1, rng).answer, "B");
  Question q2{"q2", "c", 3, "p", {}, "B", {}};
  EXPECT_EQ(c.answer(q2, rng).answer, "");
  EXPECT_FALSE(judge(q2, c.answer(q2, rng)).correct);
}

TEST(ScriptedCandidateTest, LoadsRecords) {
  std::istringstream in(R"({"question_id":"q1","answer":"B"})" "\n" R"({"question_id":"q2","answer":"A"})" "\n");
  auto c = ScriptedCandidate::load("s", in);
  Rng rng(1);
  EXPECT_EQ(c.answer(Question{"q2", "c", 1, "p", {}, "A", {}}, rng).answer, "A");
  std::istringstream dup(R"({"question_id":"q1","answer":"B"})" "\n" R"({"question_id":"q1","answer":"A"})" "\n");
  EXPECT_THROW(ScriptedCandidate::load("s", dup), InputError);
}

TEST(JudgeTest, Normalization) {
  Question q{"q", "c", 1, "p", {{"A", "x"}, {"B", "y"}, {"C", "z"}}, "C", {}};
  EXPECT_TRUE(judge(q, {"q", "c.", {}}).correct);
  EXPECT_TRUE(judge(q, {"q", "  C ", {}}).correct);
  EXPECT_FALSE(judge(q, {"q", "B", {}}).correct);
  EXPECT_FALSE(judge(q, {"q", "", {}}).correct);
  EXPECT_EQ(judge(q, {"q", "c", {}}).judged_by, "answer-key");
}

TEST(JudgeTest, OptionTextMatchesLabel) {
  Question q{"q", "c", 1, "p", {{"A", "Paris"}, {"B", "Lyon"}}, "A", {}};
  EXPECT_TRUE(judge(q, {"q", "Paris", {}}).correct);
  EXPECT_TRUE(judge(q, {"q", "paris!", {}}).correct);
  EXPECT_FALSE(judge(q, {"q", "Lyon", {}}).correct);
}

TEST(JudgeTest, OpenEnded) {
  Question q{"q", "c", 1, "p", {}, "Forty Two", {}};
  EXPECT_TRUE(judge(q, {"q", "forty two.", {}}).correct);
  EXPECT_FALSE(judge(q, {"q", "forty-two", {}}).correct);
}

TEST(JudgeTest, PureFunction) {
  Question q = option_question(3);
  CandidateAnswer a{q.id, "nice", {}};
  const Verdict v1 = judge(q, a), v2 = judge(q, a);
  EXPECT_EQ(v1.correct, v2.correct);
  EXPECT_TRUE(v1.correct);
}

class RemoteCandidateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/answer", [this](const httplib::Request& req, httplib::Response& res) {
      ++calls_;
      last_body_ = req.body;
      auto body = nlohmann::json::parse(req.body);
      if (body["question_id"] == "fail") {
        res.status = 503;
        return;
      }
      if (body["question_id"] == "slow") std::this_thread::sleep_for(std::chrono::milliseconds(600));
      res.set_content(nlohmann::json{{"answer", "B"}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  RemoteOptions options() const {
    RemoteOptions o;
    o.base_url = "http://127.0.0.1:" + std::to_string(port_);
    o.timeout = std::chrono::milliseconds(200);
    return o;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> calls_{0};
  std::string last_body_;
};

TEST_F(RemoteCandidateTest, RelaysReplyVerbatim) {
  RemoteCandidate c("remote", options());
  Rng rng(1);
  Question q{"q7", "c", 4, "What?", {{"A", "x"}, {"B", "y"}}, "B", {"img-1"}};
  const auto a = c.answer(q, rng);
  EXPECT_EQ(a.answer, "B");
  EXPECT_EQ(a.question_id, "q7");
  const auto sent = nlohmann::json::parse(last_body_);
  EXPECT_EQ(sent["question_id"], "q7");
  EXPECT_EQ(sent["prompt"], "What?");
  EXPECT_EQ(sent["options"][1]["label"], "B");
  EXPECT_EQ(sent["media_refs"][0], "img-1");
}

TEST_F(RemoteCandidateTest, Non2xxIsUnavailableAfterRetries) {
  RemoteOptions o = options();
  o.retries = 2;
  RemoteCandidate c("remote", o);
  Rng rng(1);
  try {
    c.answer(Question{"fail", "c", 1, "p", {}, "x", {}}, rng);
    FAIL() << "expected CandidateUnavailable";
  } catch (const CandidateUnavailable& e) {
    EXPECT_EQ(e.question_id(), "fail");
  }
  EXPECT_EQ(calls_.load(), 3);
}

TEST_F(RemoteCandidateTest, TimeoutIsUnavailable) {
  RemoteCandidate c("remote", options());
  Rng rng(1);
  EXPECT_THROW(c.answer(Question{"slow", "c", 1, "p", {}, "x", {}}, rng), CandidateUnavailable);
}

TEST(RemoteCandidateNoServerTest, UnreachableIsUnavailable) {
  RemoteOptions o;
  o.base_url = "http://127.0.0.1:1";
  o.timeout = std::chrono::milliseconds(200);
  RemoteCandidate c("remote", o);
  Rng rng(1);
  EXPECT_THROW(c.answer(Question{"q", "c", 1, "p", {}, "x", {}}, rng), CandidateUnavailable);
}

}  // namespace
}  // namespace interview
