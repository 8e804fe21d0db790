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
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "interview/error.hpp"
#include "interview/participants.hpp"
#include "interview/random.hpp"
#include "interview/rational.hpp"

namespace interview {

inline constexpr double kMinWeight = 0.5;
inline constexpr double kMaxWeight = 2.0;
inline constexpr double kInitialWeight = 1.0;

struct Interviewer {
  std::string id;
  double weight = kInitialWeight;
  Tally record;  // questions posed by this interviewer and how many were answered correctly

  bool operator==(const Interviewer&) const = default;
};

// Reweights after new evidence. An interviewer whose questions were all right
// or all wrong is uninformative and loses weight; anyone else gains it:
//   w <- (1 - alpha) w   if acc in {0, 1}
//   w <- (1 + alpha) w   otherwise
// then w is clamped to [0.5, 2]. With no evidence yet the weight is unchanged.
inline Interviewer update_weight(Interviewer interviewer, double alpha) {
  const Tally& t = interviewer.record;
  if (t.asked == 0) return interviewer;
  const bool extreme = t.correct == 0 || t.correct == t.asked;
  const double factor = extreme ? (1.0 - alpha) : (1.0 + alpha);
  interviewer.weight = std::clamp(interviewer.weight * factor, kMinWeight, kMaxWeight);
  return interviewer;
}

class Panel {
 public:
  Panel(const std::vector<std::string>& ids, double alpha) : alpha_(alpha) {
    if (ids.empty()) throw InputError("panel needs at least one interviewer");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("panel alpha must lie in [0,1)");
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (id.empty()) throw InputError("interviewer id must be non-empty");
      if (!seen.insert(id).second) throw InputError("duplicate interviewer id '" + id + "'");
      members_.push_back({id, kInitialWeight, {}});
    }
  }

  // Roulette-wheel choice: id i with probability weight_i / sum of weights.
  const std::string& select(Rng& rng) const {
    double total = 0.0;
    for (const auto& m : members_) total += m.weight;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (const auto& m : members_) {
      acc += m.weight;
      if (u < acc) return m.id;
    }
    return members_.back().id;
  }

  // Adds the round's verdicts to the asking interviewer's cumulative record and
  // reweights that interviewer only. An empty round changes nothing.
  void record_round(const std::string& interviewer_id, std::span<const Verdict> verdicts) {
    Interviewer& m = at(interviewer_id);
    if (verdicts.empty()) return;
    for (const auto& v : verdicts) m.record.add(v.correct);
    m = update_weight(std::move(m), alpha_);
  }

  const Interviewer& get(const std::string& id) const {
    return const_cast<Panel*>(this)->at(id);
  }
  const std::vector<Interviewer>& members() const { return members_; }
  double alpha() const { return alpha_; }

  std::map<std::string, double> weights() const {
    std::map<std::string, double> w;
    for (const auto& m : members_) w[m.id] = m.weight;
    return w;
  }

 private:
  Interviewer& at(const std::string& id) {
    for (auto& m : members_) {
      if (m.id == id) return m;
    }
    throw InputError("unknown interviewer id '" + id + "'");
  }

  std::vector<Interviewer> members_;
  double alpha_;
};

}  // namespace interview
