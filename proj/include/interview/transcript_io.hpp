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

// JSON encodings of interview transcripts and outcomes.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "interview/engine.hpp"
#include "interview/question.hpp"
#include "json.hpp"

namespace interview {

using ordered_json = nlohmann::ordered_json;

inline const char* stage_name(Stage s) { return s == Stage::kPreInterview ? "pre" : "formal"; }

inline ordered_json to_json(const TranscriptEntry& e) {
  ordered_json j;
  j["stage"] = stage_name(e.stage);
  j["round"] = e.round;
  j["interviewer_id"] = e.interviewer_id;
  j["question_id"] = e.question_id;
  j["level"] = e.level;
  j["correct"] = e.correct;
  ordered_json w = ordered_json::object();
  for (const auto& [id, weight] : e.weights) w[id] = weight;
  j["weight_snapshot"] = std::move(w);
  j["level_after"] = e.level_after;
  return j;
}

template <typename Json>
TranscriptEntry transcript_entry_from_json(const Json& j) {
  TranscriptEntry e;
  const std::string stage = detail::required_string(j, "stage");
  if (stage == "pre") {
    e.stage = Stage::kPreInterview;
  } else if (stage == "formal") {
    e.stage = Stage::kFormal;
  } else {
    throw InputError("unknown transcript stage '" + stage + "'");
  }
  e.round = j.at("round").template get<int>();
  e.interviewer_id = detail::required_string(j, "interviewer_id");
  e.question_id = detail::required_string(j, "question_id");
  e.level = j.at("level").template get<int>();
  e.correct = j.at("correct").template get<bool>();
  for (const auto& [id, w] : j.at("weight_snapshot").items()) e.weights[id] = w.template get<double>();
  e.level_after = j.at("level_after").template get<int>();
  return e;
}

inline void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& transcript) {
  for (const auto& e : transcript) out << to_json(e).dump() << '\n';
}

inline std::vector<TranscriptEntry> read_transcript(std::istream& in) {
  std::vector<TranscriptEntry> out;
  for_each_json_line(in, [&](const nlohmann::json& j, std::size_t) {
    try {
      out.push_back(transcript_entry_from_json(j));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("bad transcript record: ") + e.what());
    }
  });
  return out;
}

inline ordered_json to_json(const InterviewConfig& c) {
  ordered_json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["n_level"] = c.n_level;
  j["middle"] = c.middle;
  j["pre_size"] = c.pre_size;
  j["round_size"] = c.round_size;
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  j["per_question_weights"] = c.per_question_weights;
  j["per_round_accuracy"] = c.per_round_accuracy;
  j["escape_resets_history"] = c.escape_resets_history;
  return j;
}

// Outcome summary record (the transcript itself is written separately).
inline ordered_json outcome_summary(const InterviewOutcome& o) {
  ordered_json j;
  j["candidate_id"] = o.candidate_id;
  j["questions_asked"] = o.questions_asked;
  j["pre_questions"] = o.pre_questions;
  j["initial_level"] = o.initial_level;
  j["raw_score"] = o.raw_score;
  j["weighted_score"] = o.weighted_score;
  j["credit_score"] = o.credit_score;
  ordered_json profile = ordered_json::object();
  for (const auto& [level, acc] : o.profile) profile[std::to_string(level)] = acc;
  j["profile"] = std::move(profile);
  j["level_history"] = o.level_history;
  j["early_stop"] = o.early_stop;
  j["warnings"] = o.warnings;
  ordered_json panel = ordered_json::array();
  for (const auto& m : o.panel) {
    panel.push_back({{"id", m.id},
                     {"weight", m.weight},
                     {"asked", m.record.asked},
                     {"correct", m.record.correct}});
  }
  j["panel"] = std::move(panel);
  j["config"] = to_json(o.config);
  return j;
}

}  // namespace interview
