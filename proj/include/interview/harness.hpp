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

// Validation harness: full-coverage ground truth, the random-sampling
// baseline, synthetic benchmarks and candidates, and the multi-seed runner
// that correlates both strategies against ground truth across budgets.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "interview/engine.hpp"
#include "interview/error.hpp"
#include "interview/metrics.hpp"
#include "interview/panel.hpp"
#include "interview/participants.hpp"
#include "interview/question_pool.hpp"
#include "interview/random.hpp"

namespace interview {

struct GroundTruth {
  double accuracy = 0.0;
  std::map<int, double> profile;
  int asked = 0;
};

// Every question answered once, in catalogue order.
inline GroundTruth full_coverage(const Catalogue& catalogue, Candidate& candidate, Rng& rng,
                                 const Judge& judge = answer_key_judge()) {
  if (catalogue.empty()) throw InputError("full coverage needs a non-empty pool");
  Tally total;
  std::map<int, Tally> by_level;
  for (const auto& q : catalogue.questions()) {
    const bool ok = judge(q, candidate.answer(q, rng)).correct;
    total.add(ok);
    by_level[q.level].add(ok);
  }
  GroundTruth gt;
  gt.accuracy = total.accuracy();
  gt.asked = total.asked;
  for (const auto& [level, t] : by_level) gt.profile[level] = t.accuracy();
  return gt;
}

// Accuracy on `budget` questions sampled uniformly without replacement.
inline double random_baseline(const Catalogue& catalogue, Candidate& candidate, int budget,
                              Rng& rng, const Judge& judge = answer_key_judge()) {
  if (budget < 1) throw InputError("baseline budget must be >= 1");
  if (static_cast<std::size_t>(budget) > catalogue.size()) {
    throw InputError("baseline budget " + std::to_string(budget) + " exceeds pool size " +
                     std::to_string(catalogue.size()));
  }
  std::vector<std::uint32_t> idx(catalogue.size());
  std::iota(idx.begin(), idx.end(), 0U);
  Tally t;
  for (int i = 0; i < budget; ++i) {
    const std::size_t j = i + rng.below(idx.size() - i);
    std::swap(idx[i], idx[j]);
    const Question& q = catalogue[idx[i]];
    t.add(judge(q, candidate.answer(q, rng)).correct);
  }
  return t.accuracy();
}

struct SynthSpec {
  int per_level = 300;
  int categories = 6;
  int options = 4;  // 0 for open-ended questions
  std::uint64_t seed = 0;
};

// Uniform coverage of ten levels; within a level, questions are dealt to
// categories round-robin. Answer keys are drawn uniformly from the labels.
inline std::vector<Question> synth_benchmark(const SynthSpec& spec) {
  if (spec.per_level < 1) throw InputError("per_level must be >= 1");
  if (spec.categories < 1) throw InputError("categories must be >= 1");
  if (spec.options < 0 || spec.options > 26 || spec.options == 1) {
    throw InputError("options must be 0 or between 2 and 26");
  }
  Rng rng = Rng::stream(spec.seed, "synth-benchmark");
  std::vector<Question> out;
  out.reserve(static_cast<std::size_t>(spec.per_level) * kLevelCount);
  char buf[64];
  for (int level = kMinLevel; level <= kMaxLevel; ++level) {
    for (int i = 0; i < spec.per_level; ++i) {
      const int cat = i % spec.categories;
      Question q;
      std::snprintf(buf, sizeof buf, "syn-L%02d-C%02d-%05d", level, cat + 1, i);
      q.id = buf;
      std::snprintf(buf, sizeof buf, "category-%02d", cat + 1);
      q.category = buf;
      q.level = level;
      q.prompt = "Synthetic level-" + std::to_string(level) + " item " + std::to_string(i) +
                 " in " + q.category;
      for (int o = 0; o < spec.options; ++o) {
        const std::string label(1, static_cast<char>('A' + o));
        q.options.push_back({label, "choice " + label + " for " + q.id});
      }
      if (spec.options > 0) {
        q.answer_key = q.options[rng.below(q.options.size())].label;
      } else {
        q.answer_key = "answer-" + std::to_string(rng.below(1'000'000));
      }
      out.push_back(std::move(q));
    }
  }
  return out;
}

// Ten sharp reference annotators with abilities 1.5, 2.5, ..., 10.5: about
// 11 - L of them solve a level-L question.
inline std::vector<SyntheticProfile> reference_annotators() {
  std::vector<SyntheticProfile> out;
  for (int k = 1; k <= 10; ++k) out.push_back({k + 0.5, 4.0, 0.0});
  return out;
}

// Verdicts of simulated annotators on `questions` (levels taken as truth).
inline VerdictMatrix simulate_verdicts(const std::vector<Question>& questions,
                                       const std::vector<SyntheticProfile>& annotators,
                                       std::uint64_t seed) {
  VerdictMatrix m;
  for (std::size_t k = 0; k < annotators.size(); ++k) m.model_ids.push_back("ref-" + std::to_string(k + 1));
  m.verdicts.reserve(questions.size() * annotators.size());
  for (std::size_t k = 0; k < annotators.size(); ++k) annotators[k].validate();
  for (const auto& q : questions) {
    m.question_ids.push_back(q.id);
    for (std::size_t k = 0; k < annotators.size(); ++k) {
      Rng rng = Rng::stream(seed, "reference-verdict", fnv1a(q.id), k);
      m.verdicts.push_back(rng.bernoulli(annotators[k].p_correct(q.level)) ? 1 : 0);
    }
  }
  return m;
}

struct PopulationSpec {
  int count = 19;
  double ability_min = 0.5;
  double ability_max = 10.5;
  double slope = 2.0;
  double floor = 0.25;
};

struct NamedProfile {
  std::string id;
  SyntheticProfile profile;
};

// Abilities evenly spaced over [ability_min, ability_max].
inline std::vector<NamedProfile> synthetic_population(const PopulationSpec& spec) {
  if (spec.count < 2) throw InputError("population needs at least two candidates");
  std::vector<NamedProfile> out;
  char buf[32];
  for (int i = 0; i < spec.count; ++i) {
    const double t = static_cast<double>(i) / (spec.count - 1);
    std::snprintf(buf, sizeof buf, "synthetic-%02d", i + 1);
    SyntheticProfile p{spec.ability_min + t * (spec.ability_max - spec.ability_min), spec.slope,
                       spec.floor};
    p.validate();
    out.push_back({buf, p});
  }
  return out;
}

enum class ScoreKind { kRaw, kWeighted, kCredit };

inline const char* score_kind_name(ScoreKind k) {
  switch (k) {
    case ScoreKind::kRaw: return "raw";
    case ScoreKind::kWeighted: return "weighted";
    case ScoreKind::kCredit: return "credit";
  }
  return "raw";
}

inline ScoreKind parse_score_kind(const std::string& s) {
  if (s == "raw") return ScoreKind::kRaw;
  if (s == "weighted") return ScoreKind::kWeighted;
  if (s == "credit") return ScoreKind::kCredit;
  throw InputError("unknown score kind '" + s + "' (raw, weighted, credit)");
}

inline double interview_score(const InterviewOutcome& o, ScoreKind kind) {
  switch (kind) {
    case ScoreKind::kRaw: return o.raw_score;
    case ScoreKind::kWeighted: return o.weighted_score;
    case ScoreKind::kCredit: return o.credit_score;
  }
  return o.raw_score;
}

using CandidateFactory = std::function<std::unique_ptr<Candidate>()>;

struct CandidateEntry {
  std::string id;
  CandidateFactory make;
};

inline std::vector<CandidateEntry> synthetic_candidates(const std::vector<NamedProfile>& profiles) {
  std::vector<CandidateEntry> out;
  for (const auto& p : profiles) {
    out.push_back({p.id, [p] { return std::make_unique<SyntheticCandidate>(p.id, p.profile); }});
  }
  return out;
}

struct ExperimentSpec {
  std::vector<int> budgets{20, 30, 50, 80, 100};
  std::vector<std::uint64_t> seeds;
  std::vector<CandidateEntry> candidates;
  InterviewConfig interview;
  std::vector<std::string> panel_ids{"interviewer-1", "interviewer-2", "interviewer-3"};
  ScoreKind score_kind = ScoreKind::kCredit;
  int parallel = 1;

  void validate() const {
    if (budgets.empty()) throw InputError("experiment needs at least one budget");
    if (seeds.empty()) throw InputError("experiment needs at least one seed");
    if (candidates.size() < 2) throw InputError("experiment needs at least two candidates");
    for (int b : budgets) {
      if (b < interview.round_size) {
        throw InputError("budget " + std::to_string(b) + " is below round_size");
      }
    }
    InterviewConfig probe = interview;
    probe.budget = *std::max_element(budgets.begin(), budgets.end());
    probe.validate();
    Panel(panel_ids, interview.alpha);
  }
};

inline std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> s(count);
  std::iota(s.begin(), s.end(), first);
  return s;
}

enum class Strategy { kInterview, kRandom };

inline const char* strategy_name(Strategy s) { return s == Strategy::kInterview ? "interview" : "random"; }

struct MetricTriple {
  double srcc = 0.0;
  double plcc = 0.0;
  double krcc = 0.0;
  bool operator==(const MetricTriple&) const = default;
};

inline MetricTriple correlate(std::span<const double> estimate, std::span<const double> truth) {
  return {srcc(estimate, truth), plcc(estimate, truth), krcc(estimate, truth)};
}

struct CellSummary {
  int budget = 0;
  Strategy strategy = Strategy::kInterview;
  std::vector<std::optional<MetricTriple>> per_seed;  // nullopt: correlation undefined
  MetricTriple mean;
  MetricTriple stdev;
  int valid = 0;
  int invalid = 0;
  bool operator==(const CellSummary&) const = default;
};

// One-sided exact sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
struct SignTest {
  int wins = 0;
  int losses = 0;
  int ties = 0;
  double p_value = 1.0;
  bool operator==(const SignTest&) const = default;
};

inline double binomial_upper_tail_half(int n, int k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double p = 0.0;
  for (int i = k; i <= n; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
                            n * std::log(2.0);
    p += std::exp(log_term);
  }
  return std::min(1.0, p);
}

inline SignTest sign_test(std::span<const double> differences) {
  SignTest t;
  for (double d : differences) {
    if (d > 0) ++t.wins;
    else if (d < 0) ++t.losses;
    else ++t.ties;
  }
  t.p_value = binomial_upper_tail_half(t.wins + t.losses, t.wins);
  return t;
}

struct ComparisonReport {
  std::string score_kind;
  std::vector<int> budgets;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> candidate_ids;
  std::vector<CellSummary> cells;  // budget-major, interview before random
  // Mean over budgets of (interview mean - random mean), percentage points.
  MetricTriple avg_improvement_pp;
  std::map<int, SignTest> sign_by_budget;  // on SRCC, paired by seed
  SignTest sign_pooled;

  const CellSummary& cell(int budget, Strategy s) const {
    for (const auto& c : cells) {
      if (c.budget == budget && c.strategy == s) return c;
    }
    throw InputError("no report cell for budget " + std::to_string(budget));
  }
  bool has_invalid_cells() const {
    return std::any_of(cells.begin(), cells.end(), [](const auto& c) { return c.invalid > 0; });
  }
  bool operator==(const ComparisonReport&) const = default;
};

namespace detail {

inline void summarize(CellSummary& cell) {
  cell.valid = 0;
  cell.invalid = 0;
  MetricTriple sum, sq;
  for (const auto& m : cell.per_seed) {
    if (!m) {
      ++cell.invalid;
      continue;
    }
    ++cell.valid;
    sum.srcc += m->srcc;
    sum.plcc += m->plcc;
    sum.krcc += m->krcc;
  }
  if (cell.valid == 0) {
    cell.mean = cell.stdev = {std::nan(""), std::nan(""), std::nan("")};
    return;
  }
  const double n = cell.valid;
  cell.mean = {sum.srcc / n, sum.plcc / n, sum.krcc / n};
  for (const auto& m : cell.per_seed) {
    if (!m) continue;
    sq.srcc += (m->srcc - cell.mean.srcc) * (m->srcc - cell.mean.srcc);
    sq.plcc += (m->plcc - cell.mean.plcc) * (m->plcc - cell.mean.plcc);
    sq.krcc += (m->krcc - cell.mean.krcc) * (m->krcc - cell.mean.krcc);
  }
  const double d = cell.valid > 1 ? n - 1 : 1.0;
  cell.stdev = {std::sqrt(sq.srcc / d), std::sqrt(sq.plcc / d), std::sqrt(sq.krcc / d)};
}

}  // namespace detail

// Fills the derived fields (means, improvements, sign tests) from per-seed
// values already present in `report.cells`.
inline void finalize_report(ComparisonReport& report) {
  for (auto& c : report.cells) detail::summarize(c);
  MetricTriple sum;
  int used = 0;
  std::vector<double> pooled;
  report.sign_by_budget.clear();
  for (int b : report.budgets) {
    const auto& iv = report.cell(b, Strategy::kInterview);
    const auto& rd = report.cell(b, Strategy::kRandom);
    if (iv.valid > 0 && rd.valid > 0) {
      sum.srcc += iv.mean.srcc - rd.mean.srcc;
      sum.plcc += iv.mean.plcc - rd.mean.plcc;
      sum.krcc += iv.mean.krcc - rd.mean.krcc;
      ++used;
    }
    std::vector<double> diffs;
    for (std::size_t s = 0; s < iv.per_seed.size() && s < rd.per_seed.size(); ++s) {
      if (iv.per_seed[s] && rd.per_seed[s]) diffs.push_back(iv.per_seed[s]->srcc - rd.per_seed[s]->srcc);
    }
    report.sign_by_budget[b] = sign_test(diffs);
    pooled.insert(pooled.end(), diffs.begin(), diffs.end());
  }
  if (used > 0) {
    report.avg_improvement_pp = {100.0 * sum.srcc / used, 100.0 * sum.plcc / used,
                                 100.0 * sum.krcc / used};
  } else {
    report.avg_improvement_pp = {std::nan(""), std::nan(""), std::nan("")};
  }
  report.sign_pooled = sign_test(pooled);
}

namespace detail {

// Results of one seed: per budget, per strategy, metrics or nullopt.
struct SeedResult {
  std::vector<std::optional<MetricTriple>> interview;
  std::vector<std::optional<MetricTriple>> random;
};

inline std::optional<MetricTriple> try_correlate(const std::vector<double>& est,
                                                 const std::vector<double>& truth) {
  try {
    return correlate(est, truth);
  } catch (const UndefinedCorrelation&) {
    return std::nullopt;
  }
}

inline SeedResult run_seed(const ExperimentSpec& spec,
                           const std::shared_ptr<const Catalogue>& catalogue, std::uint64_t seed) {
  const std::size_t nc = spec.candidates.size();
  std::vector<double> truth(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    auto cand = spec.candidates[c].make();
    Rng rng = Rng::stream(seed, "ground-truth", c);
    truth[c] = full_coverage(*catalogue, *cand, rng).accuracy;
  }
  SeedResult out;
  for (int budget : spec.budgets) {
    std::vector<double> iv(nc), rd(nc);
    for (std::size_t c = 0; c < nc; ++c) {
      auto cand = spec.candidates[c].make();
      QuestionPool pool(catalogue, derive_seed(seed, "pool", c, budget));
      Panel panel(spec.panel_ids, spec.interview.alpha);
      InterviewConfig cfg = spec.interview;
      cfg.budget = budget;
      cfg.seed = derive_seed(seed, "interview", c, budget);
      iv[c] = interview_score(run_interview(pool, *cand, panel, cfg), spec.score_kind);

      auto cand_r = spec.candidates[c].make();
      Rng rng = Rng::stream(seed, "baseline", c, budget);
      rd[c] = random_baseline(*catalogue, *cand_r, budget, rng);
    }
    out.interview.push_back(try_correlate(iv, truth));
    out.random.push_back(try_correlate(rd, truth));
  }
  return out;
}

}  // namespace detail

// Interview vs. random sampling, each correlated against full-coverage
// accuracy across candidates, for every (seed, budget). Seeds run in parallel
// when spec.parallel > 1; results do not depend on the thread count.
inline ComparisonReport run_comparison(const ExperimentSpec& spec,
                                       const std::shared_ptr<const Catalogue>& catalogue) {
  spec.validate();
  if (!catalogue || catalogue->empty()) throw InputError("comparison needs a non-empty pool");
  const int max_budget = *std::max_element(spec.budgets.begin(), spec.budgets.end());
  if (static_cast<std::size_t>(max_budget) > catalogue->size()) {
    throw InputError("largest budget exceeds pool size");
  }

  std::vector<detail::SeedResult> results(spec.seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < spec.seeds.size(); i = next++) {
      try {
        results[i] = detail::run_seed(spec, catalogue, spec.seeds[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = spec.seeds.size();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(spec.parallel, static_cast<int>(spec.seeds.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ComparisonReport report;
  report.score_kind = score_kind_name(spec.score_kind);
  report.budgets = spec.budgets;
  report.seeds = spec.seeds;
  for (const auto& c : spec.candidates) report.candidate_ids.push_back(c.id);
  for (std::size_t b = 0; b < spec.budgets.size(); ++b) {
    CellSummary iv{spec.budgets[b], Strategy::kInterview, {}, {}, {}, 0, 0};
    CellSummary rd{spec.budgets[b], Strategy::kRandom, {}, {}, {}, 0, 0};
    for (const auto& r : results) {
      iv.per_seed.push_back(r.interview[b]);
      rd.per_seed.push_back(r.random[b]);
    }
    report.cells.push_back(std::move(iv));
    report.cells.push_back(std::move(rd));
  }
  finalize_report(report);
  return report;
}

}  // namespace interview
