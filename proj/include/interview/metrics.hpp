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

// Correlation statistics between two score vectors: Pearson (PLCC),
// Spearman on average ranks (SRCC) and Kendall tau-b (KRCC). Undefined
// correlations (fewer than two points, a constant vector) throw instead of
// returning NaN.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "interview/error.hpp"
#include "interview/rational.hpp"
#include "interview/transcript.hpp"

namespace interview {

struct ScoreVector {
  std::vector<std::string> model_ids;
  std::vector<double> scores;
};

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("correlation inputs differ in length");
  if (x.size() < 2) throw UndefinedCorrelation("correlation needs at least two points");
}

inline bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

inline double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

inline void check_aligned(const ScoreVector& x, const ScoreVector& y) {
  if (x.model_ids.size() != x.scores.size() || y.model_ids.size() != y.scores.size()) {
    throw InputError("score vector ids and scores differ in length");
  }
  if (x.model_ids != y.model_ids) throw InputError("score vectors are not aligned by model id");
}

}  // namespace detail

// Average (fractional) ranks, 1-based; tied values share the mean of the
// ranks they occupy.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

inline double plcc(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  if (detail::is_constant(x) || detail::is_constant(y)) {
    throw UndefinedCorrelation("PLCC undefined: zero variance");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return detail::clamp_unit(sxy / std::sqrt(sxx * syy));
}

inline double srcc(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  if (detail::is_constant(x) || detail::is_constant(y)) {
    throw UndefinedCorrelation("SRCC undefined: all ranks tied");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return plcc(rx, ry);
}

// Pair counts behind tau-b.
struct KendallCounts {
  std::int64_t concordant_minus_discordant = 0;
  std::int64_t untied_x = 0;  // pairs not tied in x
  std::int64_t untied_y = 0;  // pairs not tied in y
};

// Knight's O(n log n) pair counting: sort by (x, y), count joint and
// x-ties, then count y inversions with a merge sort.
inline KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  auto pairs = [](std::int64_t t) { return t * (t - 1) / 2; };
  const std::int64_t n0 = pairs(static_cast<std::int64_t>(n));

  std::int64_t ties_x = 0, ties_xy = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    ties_x += pairs(static_cast<std::int64_t>(j - i));
    for (std::size_t k = i; k < j;) {
      std::size_t m = k + 1;
      while (m < j && y[order[m]] == y[order[k]]) ++m;
      ties_xy += pairs(static_cast<std::int64_t>(m - k));
      k = m;
    }
    i = j;
  }

  // Count strict y inversions while merge-sorting the y sequence.
  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (ys[j] < ys[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buf[k++] = ys[j++];
        } else {
          buf[k++] = ys[i++];
        }
      }
      while (i < mid) buf[k++] = ys[i++];
      while (j < hi) buf[k++] = ys[j++];
    }
    std::swap(ys, buf);
  }

  std::int64_t ties_y = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && ys[j] == ys[i]) ++j;
    ties_y += pairs(static_cast<std::int64_t>(j - i));
    i = j;
  }

  KendallCounts c;
  c.concordant_minus_discordant = n0 - ties_x - ties_y + ties_xy - 2 * swaps;
  c.untied_x = n0 - ties_x;
  c.untied_y = n0 - ties_y;
  return c;
}

// Kendall tau-b: (C - D) / sqrt((n0 - n1)(n0 - n2)).
inline double krcc(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const KendallCounts c = kendall_counts(x, y);
  if (c.untied_x == 0 || c.untied_y == 0) {
    throw UndefinedCorrelation("KRCC undefined: all values tied");
  }
  return detail::clamp_unit(static_cast<double>(c.concordant_minus_discordant) /
                            std::sqrt(static_cast<double>(c.untied_x) *
                                      static_cast<double>(c.untied_y)));
}

inline double plcc(const ScoreVector& x, const ScoreVector& y) {
  detail::check_aligned(x, y);
  return plcc(x.scores, y.scores);
}
inline double srcc(const ScoreVector& x, const ScoreVector& y) {
  detail::check_aligned(x, y);
  return srcc(x.scores, y.scores);
}
inline double krcc(const ScoreVector& x, const ScoreVector& y) {
  detail::check_aligned(x, y);
  return krcc(x.scores, y.scores);
}

// Per-level accuracy over the formal questions of a transcript. Levels that
// were never asked are absent.
inline std::map<int, double> level_profile(std::span<const TranscriptEntry> transcript) {
  std::map<int, Tally> tallies;
  for (const auto& e : transcript) {
    if (e.stage == Stage::kFormal) tallies[e.level].add(e.correct);
  }
  std::map<int, double> profile;
  for (const auto& [level, t] : tallies) profile[level] = t.accuracy();
  return profile;
}

}  // namespace interview
