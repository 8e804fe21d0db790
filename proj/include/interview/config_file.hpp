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

// Plain-text key/value files:
//
//   # comment
//   alpha = 0.2
//   budgets = 20, 30, 50
//
// Keys are unique; list values are comma separated.

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "interview/engine.hpp"
#include "interview/error.hpp"

namespace interview {

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

class KeyValues {
 public:
  static KeyValues parse(std::istream& in) {
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string text = detail::trim(line);
      if (text.empty()) continue;
      const auto eq = text.find('=');
      if (eq == std::string::npos) {
        throw InputError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      std::string key = detail::trim(std::string_view(text).substr(0, eq));
      std::string value = detail::trim(std::string_view(text).substr(eq + 1));
      if (key.empty()) throw InputError("line " + std::to_string(line_no) + ": empty key");
      if (!kv.values_.emplace(key, value).second) {
        throw InputError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      }
    }
    return kv;
  }

  static KeyValues parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void erase(const std::string& key) { values_.erase(key); }
  const std::map<std::string, std::string>& entries() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : to_double(key, it->second);
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : to_int(key, it->second);
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InputError("key '" + key + "': expected a boolean, got '" + v + "'");
  }

  std::vector<std::int64_t> get_int_list(const std::string& key,
                                         std::vector<std::int64_t> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::int64_t> out;
    for (const auto& item : split(it->second)) out.push_back(to_int(key, item));
    return out;
  }

  std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    for (const auto& item : split(it->second)) out.push_back(to_double(key, item));
    return out;
  }

  // Throws naming the first key outside `known`.
  void require_known(const std::set<std::string>& known) const {
    for (const auto& [key, _] : values_) {
      if (!known.count(key)) throw InputError("unknown key '" + key + "'");
    }
  }

  static std::vector<std::string> split(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = detail::trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

 private:
  static double to_double(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE) {
      throw InputError("key '" + key + "': expected a number, got '" + v + "'");
    }
    return d;
  }
  static std::int64_t to_int(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE) {
      throw InputError("key '" + key + "': expected an integer, got '" + v + "'");
    }
    return i;
  }

  std::map<std::string, std::string> values_;
};

inline const std::set<std::string>& interview_config_keys() {
  static const std::set<std::string> keys = {
      "alpha",       "beta",   "n_level", "middle",
      "pre_size",    "round_size", "budget", "seed",
      "per_question_weights", "per_round_accuracy", "escape_resets_history"};
  return keys;
}

// Reads the interview keys of `kv`; other keys are ignored here.
inline InterviewConfig interview_config_from(const KeyValues& kv,
                                             InterviewConfig base = InterviewConfig{}) {
  InterviewConfig c = base;
  c.alpha = kv.get_double("alpha", c.alpha);
  c.beta = kv.get_double("beta", c.beta);
  c.n_level = static_cast<int>(kv.get_int("n_level", c.n_level));
  c.middle = static_cast<int>(kv.get_int("middle", c.middle));
  c.pre_size = static_cast<int>(kv.get_int("pre_size", c.pre_size));
  c.round_size = static_cast<int>(kv.get_int("round_size", c.round_size));
  c.budget = static_cast<int>(kv.get_int("budget", c.budget));
  c.seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<std::int64_t>(c.seed)));
  c.per_question_weights = kv.get_bool("per_question_weights", c.per_question_weights);
  c.per_round_accuracy = kv.get_bool("per_round_accuracy", c.per_round_accuracy);
  c.escape_resets_history = kv.get_bool("escape_resets_history", c.escape_resets_history);
  c.validate();
  return c;
}

// Shortest text that parses back to exactly `v`.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string to_key_values(const InterviewConfig& c) {
  std::ostringstream os;
  os << "alpha = " << format_double(c.alpha) << '\n'
     << "beta = " << format_double(c.beta) << '\n'
     << "n_level = " << c.n_level << '\n'
     << "middle = " << c.middle << '\n'
     << "pre_size = " << c.pre_size << '\n'
     << "round_size = " << c.round_size << '\n'
     << "budget = " << c.budget << '\n'
     << "seed = " << c.seed << '\n'
     << "per_question_weights = " << (c.per_question_weights ? "true" : "false") << '\n'
     << "per_round_accuracy = " << (c.per_round_accuracy ? "true" : "false") << '\n'
     << "escape_resets_history = " << (c.escape_resets_history ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace interview
