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
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "interview/error.hpp"
#include "interview/question.hpp"
#include "interview/random.hpp"

namespace interview {

// Immutable, validated question set with unique ids. Shared read-only between
// pools so that cloning a pool only copies index stacks.
class Catalogue {
 public:
  Catalogue() = default;

  explicit Catalogue(std::vector<Question> questions) : questions_(std::move(questions)) {
    index_.reserve(questions_.size());
    for (std::size_t i = 0; i < questions_.size(); ++i) {
      validate(questions_[i]);
      if (!index_.emplace(questions_[i].id, static_cast<std::uint32_t>(i)).second) {
        throw InputError("duplicate question id '" + questions_[i].id + "'");
      }
    }
  }

  std::size_t size() const { return questions_.size(); }
  bool empty() const { return questions_.empty(); }
  const Question& operator[](std::size_t i) const { return questions_[i]; }
  const std::vector<Question>& questions() const { return questions_; }

  const Question* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &questions_[it->second];
  }
  std::ptrdiff_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  }

 private:
  std::vector<Question> questions_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Per-(level, category) stacks of unasked questions, served without
// replacement. Within a level, draws walk the categories round-robin and pop
// one question per category per pass.
class QuestionPool {
 public:
  QuestionPool() : QuestionPool(std::make_shared<const Catalogue>(), 0) {}

  // Shuffles the catalogue once with `seed`, then pushes every question onto
  // its (level, category) stack in shuffled order.
  QuestionPool(std::shared_ptr<const Catalogue> catalogue, std::uint64_t seed)
      : catalogue_(std::move(catalogue)), consumed_(catalogue_->size(), false) {
    std::array<std::map<std::string, std::vector<std::uint32_t>>, kLevelCount> staging;
    std::vector<std::uint32_t> order(catalogue_->size());
    std::iota(order.begin(), order.end(), 0U);
    Rng rng = Rng::stream(seed, "pool-shuffle");
    rng.shuffle(std::span<std::uint32_t>(order));
    for (std::uint32_t idx : order) {
      const Question& q = (*catalogue_)[idx];
      staging[q.level - kMinLevel][q.category].push_back(idx);
    }
    for (int li = 0; li < kLevelCount; ++li) {
      LevelStacks& lvl = levels_[li];
      for (auto& [category, stack] : staging[li]) {
        lvl.remaining += static_cast<int>(stack.size());
        lvl.categories.push_back(category);
        lvl.stacks.push_back(std::move(stack));
      }
    }
  }

  // load_pool: parse line-delimited question records and stratify them.
  static QuestionPool load(std::istream& in, std::uint64_t seed) {
    return QuestionPool(std::make_shared<const Catalogue>(read_questions(in)), seed);
  }

  // Up to `count` questions at exactly `level`, consumed. Returns fewer (or
  // none) once the level runs dry; never falls back to another level.
  // `rng` picks the starting category the first time a level is drawn from.
  std::vector<Question> draw(int level, int count, Rng& rng) {
    check_level(level);
    if (count < 1) throw InputError("draw count must be >= 1");
    LevelStacks& lvl = levels_[level - kMinLevel];
    std::vector<Question> out;
    if (lvl.remaining == 0) return out;
    const std::size_t n = lvl.categories.size();
    if (!lvl.cursor_started) {
      lvl.cursor = rng.below(n);
      lvl.cursor_started = true;
    }
    while (static_cast<int>(out.size()) < count && lvl.remaining > 0) {
      auto& stack = lvl.stacks[lvl.cursor];
      lvl.cursor = (lvl.cursor + 1) % n;
      if (stack.empty()) continue;
      const std::uint32_t idx = stack.back();
      stack.pop_back();
      --lvl.remaining;
      consumed_[idx] = true;
      asked_.push_back(idx);
      out.push_back((*catalogue_)[idx]);
    }
    return out;
  }

  int available(int level) const {
    check_level(level);
    return levels_[level - kMinLevel].remaining;
  }

  int total_available() const {
    int total = 0;
    for (const auto& lvl : levels_) total += lvl.remaining;
    return total;
  }

  std::size_t size() const { return catalogue_->size(); }
  std::size_t asked_count() const { return asked_.size(); }

  bool is_asked(const std::string& id) const {
    const auto idx = catalogue_->index_of(id);
    return idx >= 0 && consumed_[static_cast<std::size_t>(idx)];
  }

  // Question ids in consumption order.
  std::vector<std::string> asked_ids() const {
    std::vector<std::string> ids;
    ids.reserve(asked_.size());
    for (auto idx : asked_) ids.push_back((*catalogue_)[idx].id);
    return ids;
  }

  const Catalogue& catalogue() const { return *catalogue_; }
  std::shared_ptr<const Catalogue> shared_catalogue() const { return catalogue_; }

  // Human-readable snapshot of every stack, bottom to top. Two pools with the
  // same catalogue, seed and draw history dump identically.
  std::string dump() const {
    std::ostringstream os;
    for (int li = 0; li < kLevelCount; ++li) {
      const LevelStacks& lvl = levels_[li];
      for (std::size_t c = 0; c < lvl.categories.size(); ++c) {
        os << (li + kMinLevel) << '\t' << lvl.categories[c] << '\t';
        for (auto idx : lvl.stacks[c]) os << (*catalogue_)[idx].id << ' ';
        os << '\n';
      }
    }
    return os.str();
  }

 private:
  struct LevelStacks {
    std::vector<std::string> categories;  // sorted
    std::vector<std::vector<std::uint32_t>> stacks;
    std::size_t cursor = 0;
    bool cursor_started = false;
    int remaining = 0;
  };

  static void check_level(int level) {
    if (!valid_level(level)) {
      throw InputError("level " + std::to_string(level) + " outside [1,10]");
    }
  }

  std::shared_ptr<const Catalogue> catalogue_;
  std::array<LevelStacks, kLevelCount> levels_{};
  std::vector<bool> consumed_;
  std::vector<std::uint32_t> asked_;
};

// Correct/incorrect verdicts of reference annotator models, question-major.
struct VerdictMatrix {
  std::vector<std::string> question_ids;
  std::vector<std::string> model_ids;
  std::vector<std::uint8_t> verdicts;  // [question][model]

  bool at(std::size_t question, std::size_t model) const {
    return verdicts[question * model_ids.size() + model] != 0;
  }
  void check_shape() const {
    if (verdicts.size() != question_ids.size() * model_ids.size()) {
      throw InputError("verdict matrix dimensions do not match its id lists");
    }
  }
};

// Builds a matrix from {question_id, model_id, correct} records. Questions that
// lack a verdict from any model are left out and reported in `incomplete`.
struct VerdictLoad {
  VerdictMatrix matrix;
  std::vector<std::string> incomplete;
};

inline VerdictLoad read_verdicts(std::istream& in) {
  std::map<std::string, std::map<std::string, bool>> by_question;
  std::vector<std::string> question_order;
  std::map<std::string, int> models;
  for_each_json_line(in, [&](const nlohmann::json& j, std::size_t) {
    const auto qid = detail::required_string(j, "question_id");
    const auto mid = detail::required_string(j, "model_id");
    auto it = j.find("correct");
    if (it == j.end() || !it->is_boolean()) throw InputError("field 'correct' must be a boolean");
    auto [slot, fresh] = by_question.try_emplace(qid);
    if (fresh) question_order.push_back(qid);
    if (!slot->second.emplace(mid, it->get<bool>()).second) {
      throw InputError("duplicate verdict for question '" + qid + "' by model '" + mid + "'");
    }
    models.emplace(mid, 0);
  });
  VerdictLoad out;
  for (const auto& [mid, _] : models) out.matrix.model_ids.push_back(mid);
  for (const auto& qid : question_order) {
    const auto& row = by_question.at(qid);
    if (row.size() != models.size()) {
      out.incomplete.push_back(qid);
      continue;
    }
    out.matrix.question_ids.push_back(qid);
    for (const auto& mid : out.matrix.model_ids) out.matrix.verdicts.push_back(row.at(mid) ? 1 : 0);
  }
  return out;
}

// Difficulty from reference verdicts: 11 minus the number of models that
// answered correctly, with 11 (nobody correct) folded into 10. With more than
// ten reference models the result is also floored at 1.
inline int difficulty_from_correct_count(int correct) {
  return clamp_level(11 - correct);
}

inline std::map<std::string, int> annotate_difficulty(const VerdictMatrix& matrix) {
  if (matrix.model_ids.empty()) throw InputError("verdict matrix has no reference models");
  matrix.check_shape();
  std::map<std::string, int> levels;
  for (std::size_t q = 0; q < matrix.question_ids.size(); ++q) {
    int correct = 0;
    for (std::size_t m = 0; m < matrix.model_ids.size(); ++m) correct += matrix.at(q, m) ? 1 : 0;
    levels[matrix.question_ids[q]] = difficulty_from_correct_count(correct);
  }
  return levels;
}

}  // namespace interview
