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

#include <map>
#include <string>
#include <string_view>

namespace interview {

enum class Stage { kPreInterview, kFormal };

inline constexpr std::string_view kPreInterviewer = "pre-interview";

// One judged question of an interview.
struct TranscriptEntry {
  Stage stage = Stage::kFormal;
  int round = 0;  // 0 for the pre-interview, formal rounds count from 1
  std::string interviewer_id;
  std::string question_id;
  int level = 0;
  bool correct = false;
  std::map<std::string, double> weights;  // panel weights after the round's update
  int level_after = 0;  // level chosen by the accuracy / escape rules after this round

  bool operator==(const TranscriptEntry&) const = default;
};

}  // namespace interview
