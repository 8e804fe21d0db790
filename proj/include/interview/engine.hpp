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

// Two-stage adaptive interview.
//
// A short pre-interview at the middle level sets the starting difficulty.
// Each formal round then picks an interviewer by weight, draws up to
// round_size questions at the current level, judges them, reweights the
// interviewer and moves the level:
//
//   * accuracy step: +1 / 0 / -1 as the accuracy at the round's level is
//     above / equal to / below beta (cumulative over the whole interview by
//     default, last round only with per_round_accuracy);
//   * oscillation escape: when the last six round levels alternate a,b,a,b,a,b
//     between adjacent levels, jump to L[r-1] + 3 if L[r-1] > n_level, else
//     L[r-1] - 3, overriding the accuracy step;
//   * exhaustion fallback: when the chosen level has nothing left, step +1 if
//     the accuracy at the last played level beats beta, else -1, and keep
//     stepping until a level with questions is found.
//
// Levels are clamped to [1,10] after every move. The interview ends once
// `budget` formal questions have been asked (the last round is truncated to
// fit) or the pool is empty. Pre-interview questions do not count against the
// budget but are drawn from the same pool without replacement.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "interview/error.hpp"
#include "interview/metrics.hpp"
#include "interview/panel.hpp"
#include "interview/participants.hpp"
#include "interview/question_pool.hpp"
#include "interview/random.hpp"
#include "interview/rational.hpp"
#include "interview/transcript.hpp"

namespace interview {

struct InterviewConfig {
  double alpha = 0.2;
  double beta = 0.5;
  int n_level = 7;
  int middle = 5;
  int pre_size = 3;
  int round_size = 3;
  int budget = 200;
  std::uint64_t seed = 0;

  // Ablation switches; all off reproduces the reference protocol.
  bool per_question_weights = false;   // reweight after every question, not every round
  bool per_round_accuracy = false;     // accuracy step uses the last round only
  bool escape_resets_history = false;  // oscillation window restarts after an escape

  void validate() const {
    if (!valid_level(middle)) throw InputError("middle must lie in [1,10]");
    if (pre_size < 1) throw InputError("pre_size must be >= 1");
    if (round_size < 1) throw InputError("round_size must be >= 1");
    if (budget < round_size) throw InputError("budget must be >= round_size");
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0,1)");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("alpha must lie in [0,1)");
  }

  Ratio beta_ratio() const { return Ratio::from_double(beta); }

  bool operator==(const InterviewConfig&) const = default;
};

struct InterviewState {
  int level = 0;
  int round_index = 0;
  int questions_asked = 0;
  std::vector<TranscriptEntry> transcript;
  std::vector<int> level_history;
  std::array<Tally, kLevelCount> per_level{};
  Tally pre;
  Tally last_round;
  std::size_t escape_window_start = 0;

  const Tally& at_level(int level) const { return per_level[level - kMinLevel]; }
  Tally& at_level(int level) { return per_level[level - kMinLevel]; }
};

// Starting level from pre-interview accuracy: middle+1 above beta, middle at
// beta, middle-1 below. No pre-interview evidence keeps the middle level.
inline int initial_level(const Tally& pre, const InterviewConfig& config) {
  if (pre.asked == 0) return config.middle;
  const auto cmp = compare_accuracy(pre, config.beta_ratio());
  const int step = cmp > 0 ? 1 : (cmp == 0 ? 0 : -1);
  return clamp_level(config.middle + step);
}

// +1 / 0 / -1 around `level` as the tally beats / meets / misses beta.
inline int accuracy_step(int level, const Tally& tally, const Ratio& beta) {
  if (tally.asked == 0) return level;
  const auto cmp = compare_accuracy(tally, beta);
  const int step = cmp > 0 ? 1 : (cmp == 0 ? 0 : -1);
  return clamp_level(level + step);
}

// Accuracy feeding the level rules for the round just played at state.level.
inline const Tally& round_accuracy(const InterviewState& state, const InterviewConfig& config) {
  return config.per_round_accuracy ? state.last_round : state.at_level(state.level);
}

inline int update_level(const InterviewState& state, const InterviewConfig& config) {
  return accuracy_step(state.level, round_accuracy(state, config), config.beta_ratio());
}

// True when the last six entries read a,b,a,b,a,b with |a - b| == 1.
inline bool is_oscillating(std::span<const int> history) {
  if (history.size() < 6) return false;
  const auto tail = history.subspan(history.size() - 6);
  const int a = tail[0], b = tail[1];
  if (a - b != 1 && b - a != 1) return false;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (tail[i] != (i % 2 == 0 ? a : b)) return false;
  }
  return true;
}

// Escape target for an oscillating history, nullopt otherwise.
inline std::optional<int> oscillation_escape(std::span<const int> history,
                                             const InterviewConfig& config) {
  if (!is_oscillating(history)) return std::nullopt;
  const int previous = history[history.size() - 2];
  const int target = previous > config.n_level ? previous + 3 : previous - 3;
  return clamp_level(target);
}

inline std::optional<int> oscillation_escape(const InterviewState& state,
                                             const InterviewConfig& config) {
  std::span<const int> window(state.level_history);
  return oscillation_escape(window.subspan(std::min(state.escape_window_start, window.size())),
                            config);
}

// Direction of the exhaustion step: up if the accuracy at the last played
// level beats beta, down otherwise (including equality).
inline int exhaustion_direction(const Tally& last, const Ratio& beta) {
  return last.asked > 0 && compare_accuracy(last, beta) > 0 ? 1 : -1;
}

// Nearest level with questions left, stepping from the empty `level` in
// `direction`. If that runs into the edge of the scale the search continues on
// the other side. nullopt when the pool is empty.
template <typename AvailableFn>
std::optional<int> find_available_level(int level, int direction, AvailableFn&& available) {
  if (available(level) > 0) return level;
  for (int l = level + direction; valid_level(l); l += direction) {
    if (available(l) > 0) return l;
  }
  for (int l = level - direction; valid_level(l); l -= direction) {
    if (available(l) > 0) return l;
  }
  return std::nullopt;
}

inline std::optional<int> exhaustion_fallback(int level, const Tally& last_played,
                                              const QuestionPool& pool,
                                              const InterviewConfig& config) {
  const int dir = exhaustion_direction(last_played, config.beta_ratio());
  return find_available_level(level, dir, [&](int l) { return pool.available(l); });
}

struct InterviewOutcome {
  std::string candidate_id;
  double raw_score = 0.0;       // correct / asked over formal questions
  double weighted_score = 0.0;  // sum of levels answered correctly / sum of levels asked
  double credit_score = 0.0;    // sum of levels answered correctly / (10 * asked)
  std::map<int, double> profile;
  std::vector<TranscriptEntry> transcript;  // pre-interview entries first
  std::vector<int> level_history;
  int initial_level = 0;
  int questions_asked = 0;
  int pre_questions = 0;
  bool early_stop = false;
  std::vector<std::string> warnings;
  std::vector<Interviewer> panel;
  InterviewConfig config;
};

// Thrown when the candidate fails mid-interview; carries everything recorded
// up to the failing question.
class InterviewAborted : public CandidateUnavailable {
 public:
  InterviewAborted(const CandidateUnavailable& cause, InterviewOutcome partial)
      : CandidateUnavailable(cause),
        partial_(std::make_shared<const InterviewOutcome>(std::move(partial))) {}

  const InterviewOutcome& partial() const noexcept { return *partial_; }

 private:
  std::shared_ptr<const InterviewOutcome> partial_;
};

// Scores and the per-level profile from the formal part of a transcript.
inline void score_outcome(InterviewOutcome& out) {
  long asked = 0, correct = 0, level_sum = 0, level_correct = 0;
  for (const auto& e : out.transcript) {
    if (e.stage != Stage::kFormal) continue;
    ++asked;
    level_sum += e.level;
    if (e.correct) {
      ++correct;
      level_correct += e.level;
    }
  }
  out.questions_asked = static_cast<int>(asked);
  out.raw_score = asked ? static_cast<double>(correct) / asked : 0.0;
  out.weighted_score = level_sum ? static_cast<double>(level_correct) / level_sum : 0.0;
  out.credit_score = asked ? static_cast<double>(level_correct) / (kMaxLevel * asked) : 0.0;
  out.profile = level_profile(out.transcript);
}

// One interview over one pool. Not reusable: construct, run once.
class Interview {
 public:
  Interview(QuestionPool& pool, Candidate& candidate, Panel& panel, InterviewConfig config,
            Judge judge = answer_key_judge())
      : pool_(pool),
        candidate_(candidate),
        panel_(panel),
        config_(config),
        judge_(std::move(judge)),
        draw_rng_(Rng::stream(config.seed, "draw")),
        candidate_rng_(Rng::stream(config.seed, "candidate")),
        roulette_rng_(Rng::stream(config.seed, "roulette")) {
    config_.validate();
  }

  // Draws pre_size questions at the middle level and returns the starting
  // level of the formal interview.
  int pre_interview() {
    const auto questions = pool_.draw(config_.middle, config_.pre_size, draw_rng_);
    if (questions.empty()) {
      warnings_.push_back("no questions at middle level " + std::to_string(config_.middle) +
                          "; formal interview starts there");
    } else if (static_cast<int>(questions.size()) < config_.pre_size) {
      warnings_.push_back("pre-interview short: " + std::to_string(questions.size()) + " of " +
                          std::to_string(config_.pre_size) + " questions available");
    }
    const std::size_t first = state_.transcript.size();
    for (const auto& q : questions) {
      const Verdict v = ask(q);
      state_.pre.add(v.correct);
      state_.transcript.push_back(
          {Stage::kPreInterview, 0, std::string(kPreInterviewer), q.id, q.level, v.correct, {}, 0});
    }
    const int start = initial_level(state_.pre, config_);
    for (std::size_t i = first; i < state_.transcript.size(); ++i) {
      state_.transcript[i].weights = panel_.weights();
      state_.transcript[i].level_after = start;
    }
    state_.level = start;
    initial_level_ = start;
    return start;
  }

  // Plays one formal round. Returns false (and plays nothing) when the
  // budget is spent or no level has questions left.
  bool play_round() {
    if (state_.questions_asked >= config_.budget) return false;
    if (pool_.available(state_.level) == 0) {
      const auto next = exhaustion_fallback(state_.level, last_played_tally(), pool_, config_);
      if (!next) {
        early_stop_ = true;
        return false;
      }
      state_.level = *next;
    }
    const std::string interviewer = panel_.select(roulette_rng_);
    const int want = std::min(config_.round_size, config_.budget - state_.questions_asked);
    const auto questions = pool_.draw(state_.level, want, draw_rng_);
    const int round = state_.round_index + 1;

    state_.last_round = {};
    std::vector<Verdict> verdicts;
    const std::size_t first = state_.transcript.size();
    for (const auto& q : questions) {
      const Verdict v = ask(q);
      if (config_.per_question_weights) panel_.record_round(interviewer, std::span(&v, 1));
      verdicts.push_back(v);
      state_.at_level(state_.level).add(v.correct);
      state_.last_round.add(v.correct);
      ++state_.questions_asked;
      state_.transcript.push_back(
          {Stage::kFormal, round, interviewer, q.id, state_.level, v.correct, {}, 0});
    }
    if (!config_.per_question_weights) panel_.record_round(interviewer, verdicts);

    state_.round_index = round;
    state_.level_history.push_back(state_.level);
    last_played_ = state_.level;

    int next = update_level(state_, config_);
    if (const auto escaped = oscillation_escape(state_, config_)) {
      next = *escaped;
      if (config_.escape_resets_history) state_.escape_window_start = state_.level_history.size();
    }
    const auto weights = panel_.weights();
    for (std::size_t i = first; i < state_.transcript.size(); ++i) {
      state_.transcript[i].weights = weights;
      state_.transcript[i].level_after = next;
    }
    state_.level = next;
    return true;
  }

  InterviewOutcome run() {
    try {
      pre_interview();
      while (play_round()) {
      }
    } catch (const CandidateUnavailable& e) {
      throw InterviewAborted(e, outcome());
    }
    return outcome();
  }

  InterviewOutcome outcome() const {
    InterviewOutcome out;
    out.candidate_id = candidate_.id();
    out.transcript = state_.transcript;
    out.level_history = state_.level_history;
    out.initial_level = initial_level_;
    out.pre_questions = state_.pre.asked;
    out.early_stop = early_stop_;
    out.warnings = warnings_;
    out.panel = panel_.members();
    out.config = config_;
    score_outcome(out);
    return out;
  }

  const InterviewState& state() const { return state_; }

 private:
  Verdict ask(const Question& q) {
    const CandidateAnswer a = candidate_.answer(q, candidate_rng_);
    return judge_(q, a);
  }

  const Tally& last_played_tally() const {
    if (last_played_ == 0) return state_.pre;
    if (config_.per_round_accuracy) return state_.last_round;
    return state_.at_level(last_played_);
  }

  QuestionPool& pool_;
  Candidate& candidate_;
  Panel& panel_;
  InterviewConfig config_;
  Judge judge_;
  Rng draw_rng_;
  Rng candidate_rng_;
  Rng roulette_rng_;
  InterviewState state_;
  std::vector<std::string> warnings_;
  int initial_level_ = 0;
  int last_played_ = 0;
  bool early_stop_ = false;
};

inline InterviewOutcome run_interview(QuestionPool& pool, Candidate& candidate, Panel& panel,
                                      const InterviewConfig& config,
                                      Judge judge = answer_key_judge()) {
  Interview interview(pool, candidate, panel, config, std::move(judge));
  return interview.run();
}

}  // namespace interview
