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

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "interview/error.hpp"
#include "json.hpp"

namespace interview {

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 10;
inline constexpr int kLevelCount = kMaxLevel - kMinLevel + 1;

constexpr int clamp_level(int level) noexcept {
  return level < kMinLevel ? kMinLevel : (level > kMaxLevel ? kMaxLevel : level);
}
constexpr bool valid_level(int level) noexcept {
  return level >= kMinLevel && level <= kMaxLevel;
}

struct Option {
  std::string label;
  std::string text;
  bool operator==(const Option&) const = default;
};

struct Question {
  std::string id;
  std::string category;
  int level = 0;  // 0 while not yet annotated
  std::string prompt;
  std::vector<Option> options;
  std::string answer_key;
  std::vector<std::string> media_refs;

  bool operator==(const Question&) const = default;
};

// Throws InputError if the question violates its invariants. `require_level`
// is false for raw records that are about to be annotated.
inline void validate(const Question& q, bool require_level = true) {
  if (q.id.empty()) throw InputError("question has an empty id");
  if (require_level && !valid_level(q.level)) {
    throw InputError("question '" + q.id + "' has level " + std::to_string(q.level) +
                     " outside [1,10]");
  }
  if (!q.options.empty()) {
    int matches = 0;
    for (const auto& opt : q.options) matches += opt.label == q.answer_key ? 1 : 0;
    if (matches != 1) {
      throw InputError("question '" + q.id + "': answer_key '" + q.answer_key +
                       "' must match exactly one option label");
    }
  }
}

inline nlohmann::ordered_json to_json(const Question& q) {
  nlohmann::ordered_json j;
  j["id"] = q.id;
  j["category"] = q.category;
  j["level"] = q.level;
  j["prompt"] = q.prompt;
  if (!q.options.empty()) {
    auto opts = nlohmann::ordered_json::array();
    for (const auto& o : q.options) opts.push_back({{"label", o.label}, {"text", o.text}});
    j["options"] = std::move(opts);
  }
  j["answer_key"] = q.answer_key;
  if (!q.media_refs.empty()) j["media_refs"] = q.media_refs;
  return j;
}

namespace detail {

template <typename Json>
std::string required_string(const Json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw InputError(std::string("missing field '") + field + "'");
  if (!it->is_string()) throw InputError(std::string("field '") + field + "' must be a string");
  return it->template get<std::string>();
}

}  // namespace detail

// Parses one record. Level may be absent only when `require_level` is false.
template <typename Json>
Question question_from_json(const Json& j, bool require_level = true) {
  if (!j.is_object()) throw InputError("record is not an object");
  Question q;
  q.id = detail::required_string(j, "id");
  q.category = detail::required_string(j, "category");
  if (auto it = j.find("level"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw InputError("field 'level' must be an integer");
    q.level = it->template get<int>();
  } else if (require_level) {
    throw InputError("missing field 'level'");
  }
  q.prompt = detail::required_string(j, "prompt");
  q.answer_key = detail::required_string(j, "answer_key");
  if (auto it = j.find("options"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InputError("field 'options' must be an array");
    for (const auto& o : *it) {
      q.options.push_back({detail::required_string(o, "label"), detail::required_string(o, "text")});
    }
  }
  if (auto it = j.find("media_refs"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InputError("field 'media_refs' must be an array");
    for (const auto& m : *it) {
      if (!m.is_string()) throw InputError("media_refs entries must be strings");
      q.media_refs.push_back(m.template get<std::string>());
    }
  }
  validate(q, require_level);
  return q;
}

// Calls fn(json, line_number) for each non-blank line of a line-delimited
// JSON stream. Parse failures become InputError naming the line.
template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("line " + std::to_string(line_no) + ": malformed record: " + e.what());
    }
    try {
      fn(j, line_no);
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline std::vector<Question> read_questions(std::istream& in, bool require_level = true) {
  std::vector<Question> out;
  for_each_json_line(in, [&](const nlohmann::json& j, std::size_t) {
    out.push_back(question_from_json(j, require_level));
  });
  return out;
}

inline void write_questions(std::ostream& out, const std::vector<Question>& questions) {
  for (const auto& q : questions) out << to_json(q).dump() << '\n';
}

}  // namespace interview
