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

// Report files: a table (budgets x strategies x metrics plus the average
// improvement row), an SRCC-vs-budget curve for plotting, and a lossless JSON
// form of the whole report.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "interview/harness.hpp"
#include "json.hpp"

namespace interview {

namespace detail {

inline std::string fixed6(double v) {
  if (std::isnan(v)) return "invalid";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline nlohmann::ordered_json number_or_null(double v) {
  return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v);
}

inline double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

inline nlohmann::ordered_json to_json(const MetricTriple& m) {
  return {{"srcc", number_or_null(m.srcc)}, {"plcc", number_or_null(m.plcc)},
          {"krcc", number_or_null(m.krcc)}};
}

inline MetricTriple metric_from_json(const nlohmann::json& j) {
  return {number_from(j.at("srcc")), number_from(j.at("plcc")), number_from(j.at("krcc"))};
}

inline nlohmann::ordered_json to_json(const SignTest& t) {
  return {{"wins", t.wins}, {"losses", t.losses}, {"ties", t.ties}, {"p_value", t.p_value}};
}

inline SignTest sign_from_json(const nlohmann::json& j) {
  return {j.at("wins").get<int>(), j.at("losses").get<int>(), j.at("ties").get<int>(),
          j.at("p_value").get<double>()};
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["score_kind"] = r.score_kind;
  j["budgets"] = r.budgets;
  j["seeds"] = r.seeds;
  j["candidate_ids"] = r.candidate_ids;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : r.cells) {
    nlohmann::ordered_json cj;
    cj["budget"] = c.budget;
    cj["strategy"] = strategy_name(c.strategy);
    cj["mean"] = detail::to_json(c.mean);
    cj["stdev"] = detail::to_json(c.stdev);
    cj["valid"] = c.valid;
    cj["invalid"] = c.invalid;
    auto per_seed = nlohmann::ordered_json::array();
    for (const auto& m : c.per_seed) per_seed.push_back(m ? detail::to_json(*m) : nullptr);
    cj["per_seed"] = std::move(per_seed);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  j["avg_improvement_pp"] = detail::to_json(r.avg_improvement_pp);
  auto signs = nlohmann::ordered_json::object();
  for (const auto& [b, t] : r.sign_by_budget) signs[std::to_string(b)] = detail::to_json(t);
  j["sign_test_by_budget"] = std::move(signs);
  j["sign_test_pooled"] = detail::to_json(r.sign_pooled);
  return j;
}

inline ComparisonReport report_from_json(const nlohmann::json& j) {
  try {
    ComparisonReport r;
    r.score_kind = j.at("score_kind").get<std::string>();
    r.budgets = j.at("budgets").get<std::vector<int>>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.candidate_ids = j.at("candidate_ids").get<std::vector<std::string>>();
    for (const auto& cj : j.at("cells")) {
      CellSummary c;
      c.budget = cj.at("budget").get<int>();
      const auto s = cj.at("strategy").get<std::string>();
      if (s != "interview" && s != "random") throw InputError("unknown strategy '" + s + "'");
      c.strategy = s == "interview" ? Strategy::kInterview : Strategy::kRandom;
      c.mean = detail::metric_from_json(cj.at("mean"));
      c.stdev = detail::metric_from_json(cj.at("stdev"));
      c.valid = cj.at("valid").get<int>();
      c.invalid = cj.at("invalid").get<int>();
      for (const auto& m : cj.at("per_seed")) {
        c.per_seed.push_back(m.is_null() ? std::nullopt
                                         : std::optional<MetricTriple>(detail::metric_from_json(m)));
      }
      r.cells.push_back(std::move(c));
    }
    r.avg_improvement_pp = detail::metric_from_json(j.at("avg_improvement_pp"));
    for (const auto& [b, t] : j.at("sign_test_by_budget").items()) {
      r.sign_by_budget[std::stoi(b)] = detail::sign_from_json(t);
    }
    r.sign_pooled = detail::sign_from_json(j.at("sign_test_pooled"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

inline void write_table_csv(std::ostream& out, const ComparisonReport& r) {
  out << "budget,strategy,srcc,plcc,krcc,valid_runs,invalid_runs\n";
  for (int b : r.budgets) {
    for (Strategy s : {Strategy::kInterview, Strategy::kRandom}) {
      const auto& c = r.cell(b, s);
      out << b << ',' << strategy_name(s) << ',' << detail::fixed6(c.mean.srcc) << ','
          << detail::fixed6(c.mean.plcc) << ',' << detail::fixed6(c.mean.krcc) << ',' << c.valid
          << ',' << c.invalid << '\n';
    }
  }
  out << "avg_improvement_pp,interview-random," << detail::fixed6(r.avg_improvement_pp.srcc) << ','
      << detail::fixed6(r.avg_improvement_pp.plcc) << ',' << detail::fixed6(r.avg_improvement_pp.krcc)
      << ",,\n";
}

// SRCC against budget, ascending by budget.
inline void write_curve_csv(std::ostream& out, const ComparisonReport& r) {
  std::vector<int> budgets = r.budgets;
  std::sort(budgets.begin(), budgets.end());
  out << "budget,interview_srcc,random_srcc\n";
  for (int b : budgets) {
    out << b << ',' << detail::fixed6(r.cell(b, Strategy::kInterview).mean.srcc) << ','
        << detail::fixed6(r.cell(b, Strategy::kRandom).mean.srcc) << '\n';
  }
}

}  // namespace interview
