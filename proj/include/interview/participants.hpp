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

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "interview/error.hpp"
#include "interview/question.hpp"
#include "interview/random.hpp"

namespace interview {

struct CandidateAnswer {
  std::string question_id;
  std::string answer;
  std::chrono::microseconds latency{0};
};

struct Verdict {
  std::string question_id;
  bool correct = false;
  std::string judged_by;
};

// The interviewee. Implementations are used by one interview at a time.
class Candidate {
 public:
  virtual ~Candidate() = default;
  virtual const std::string& id() const = 0;
  virtual CandidateAnswer answer(const Question& question, Rng& rng) = 0;
};

// Two-parameter logistic ability curve with a guessing floor:
//   p(correct | level) = floor + (1 - floor) / (1 + exp(-slope * (ability - level)))
struct SyntheticProfile {
  double ability = 5.5;
  double slope = 1.0;
  double floor = 0.0;

  double p_correct(double level) const {
    const double z = slope * (ability - level);
    return floor + (1.0 - floor) / (1.0 + std::exp(-z));
  }

  void validate() const {
    if (!std::isfinite(ability)) throw InputError("synthetic ability must be finite");
    if (!(slope > 0.0) || !std::isfinite(slope)) throw InputError("synthetic slope must be > 0");
    if (!(floor >= 0.0 && floor < 1.0)) throw InputError("synthetic floor must lie in [0,1)");
  }
};

// Reply used by simulants for open-ended questions they get wrong.
inline constexpr std::string_view kWrongToken = "<wrong>";

class SyntheticCandidate final : public Candidate {
 public:
  SyntheticCandidate(std::string id, SyntheticProfile profile)
      : id_(std::move(id)), profile_(profile) {
    profile_.validate();
  }

  const std::string& id() const override { return id_; }
  const SyntheticProfile& profile() const { return profile_; }

  // One uniform draw decides correctness; a wrong reply on an option question
  // takes a second draw to pick a wrong label uniformly.
  CandidateAnswer answer(const Question& q, Rng& rng) override {
    CandidateAnswer a{q.id, {}, {}};
    if (rng.bernoulli(profile_.p_correct(q.level))) {
      a.answer = q.answer_key;
      return a;
    }
    if (q.options.size() > 1) {
      std::size_t pick = rng.below(q.options.size() - 1);
      for (const auto& opt : q.options) {
        if (opt.label == q.answer_key) continue;
        if (pick-- == 0) {
          a.answer = opt.label;
          break;
        }
      }
    } else {
      a.answer = std::string(kWrongToken);
    }
    return a;
  }

 private:
  std::string id_;
  SyntheticProfile profile_;
};

// Fixed question -> answer table. Unknown questions get an empty reply, which
// judges as incorrect.
class ScriptedCandidate final : public Candidate {
 public:
  ScriptedCandidate(std::string id, std::map<std::string, std::string> table)
      : id_(std::move(id)), table_(std::move(table)) {}

  // Reads {question_id, answer} records.
  static ScriptedCandidate load(std::string id, std::istream& in) {
    std::map<std::string, std::string> table;
    for_each_json_line(in, [&](const nlohmann::json& j, std::size_t) {
      auto qid = detail::required_string(j, "question_id");
      auto ans = detail::required_string(j, "answer");
      if (!table.emplace(qid, std::move(ans)).second) {
        throw InputError("duplicate scripted answer for '" + qid + "'");
      }
    });
    return ScriptedCandidate(std::move(id), std::move(table));
  }

  const std::string& id() const override { return id_; }

  CandidateAnswer answer(const Question& q, Rng&) override {
    auto it = table_.find(q.id);
    return {q.id, it == table_.end() ? std::string() : it->second, {}};
  }

 private:
  std::string id_;
  std::map<std::string, std::string> table_;
};

// Trim, ASCII case-fold, then strip trailing punctuation and whitespace.
inline std::string normalize_answer(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto is_trailing = [&](unsigned char c) {
    return is_space(c) || c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
  };
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && is_trailing(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string out(text.substr(b, e - b));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline constexpr std::string_view kAnswerKeyJudge = "answer-key";

// Answer-key judging. For option questions a reply naming an option's label or
// reproducing its full text both count as choosing that label.
inline Verdict judge(const Question& q, const CandidateAnswer& a) {
  const std::string reply = normalize_answer(a.answer);
  bool correct = false;
  if (!reply.empty()) {
    const std::string key = normalize_answer(q.answer_key);
    if (reply == key) {
      correct = true;
    } else {
      for (const auto& opt : q.options) {
        if (opt.label == q.answer_key && normalize_answer(opt.text) == reply) {
          correct = true;
          break;
        }
      }
    }
  }
  return {q.id, correct, std::string(kAnswerKeyJudge)};
}

// Seam for alternative judges (e.g. a model acting as grader).
using Judge = std::function<Verdict(const Question&, const CandidateAnswer&)>;

inline Judge answer_key_judge() { return [](const Question& q, const CandidateAnswer& a) { return judge(q, a); }; }

}  // namespace interview
