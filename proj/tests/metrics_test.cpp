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

#include <gtest/gtest.h>

#include <vector>

#include "interview/metrics.hpp"
#include "interview/random.hpp"
#include "oracles.hpp"

namespace interview {
namespace {

using Vec = std::vector<double>;
using Corr = double (*)(std::span<const double>, std::span<const double>);
const Corr kAll[] = {&plcc, &srcc, &krcc};

Vec random_vec(Rng& rng, std::size_t n, int distinct) {
  Vec v(n);
  for (auto& x : v) x = distinct > 0 ? static_cast<double>(rng.below(distinct)) : rng.uniform();
  return v;
}

TEST(PlccTest, KnownValues) {
  EXPECT_NEAR(plcc(Vec{1, 2, 3, 4}, Vec{1, 3, 2, 4}), 0.8, 1e-12);
  EXPECT_NEAR(plcc(Vec{1, 2, 3, 4}, Vec{1, 2, 3, 4}), 1.0, 1e-12);
  EXPECT_NEAR(plcc(Vec{1, 2, 3, 4}, Vec{5, 3, 1, -1}), -1.0, 1e-12);
}

TEST(SrccTest, KnownValues) {
  EXPECT_NEAR(srcc(Vec{1, 2, 3, 4, 5}, Vec{2, 1, 3, 5, 4}), 0.8, 1e-12);
  EXPECT_NEAR(srcc(Vec{1, 2, 3, 4, 5}, Vec{1, 8, 27, 64, 125}), 1.0, 1e-12);
  EXPECT_NEAR(srcc(Vec{1, 2, 3, 4, 5}, Vec{5, 4, 3, 2, 1}), -1.0, 1e-12);
}

TEST(KrccTest, KnownValues) {
  EXPECT_NEAR(krcc(Vec{1, 2, 3}, Vec{1, 3, 2}), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(krcc(Vec{1, 2, 3, 4}, Vec{4, 3, 2, 1}), -1.0, 1e-12);
  // ties: C = 4, D = 0, one x-tie, one y-tie -> 4 / sqrt(5 * 5)
  const Vec x{1, 1, 2, 3}, y{1, 2, 3, 3};
  EXPECT_NEAR(krcc(x, y), 4.0 / 5.0, 1e-12);
  EXPECT_EQ(krcc(x, y), oracle::kendall_tau_b(x, y));
}

TEST(AverageRanksTest, TiesShareMeanRank) {
  EXPECT_EQ(average_ranks(Vec{10, 20, 20, 5}), (Vec{2, 3.5, 3.5, 1}));
  EXPECT_EQ(average_ranks(Vec{}), Vec{});
}

TEST(KendallCountsTest, MatchesPairClassification) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(30);
    const Vec x = random_vec(rng, n, 5), y = random_vec(rng, n, 5);
    std::int64_t c_minus_d = 0, untied_x = 0, untied_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int sx = (x[i] > x[j]) - (x[i] < x[j]);
        const int sy = (y[i] > y[j]) - (y[i] < y[j]);
        c_minus_d += sx * sy;
        untied_x += sx != 0;
        untied_y += sy != 0;
      }
    }
    const auto k = kendall_counts(x, y);
    ASSERT_EQ(k.concordant_minus_discordant, c_minus_d);
    ASSERT_EQ(k.untied_x, untied_x);
    ASSERT_EQ(k.untied_y, untied_y);
  }
}

TEST(KrccTest, MatchesBruteForceExactlyOnSmallInputs) {
  Rng rng(7);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng.below(11);
    const int distinct = t % 3 == 0 ? 0 : 2 + static_cast<int>(rng.below(5));
    const Vec x = random_vec(rng, n, distinct), y = random_vec(rng, n, distinct);
    if (detail::is_constant(x) || detail::is_constant(y)) continue;
    ASSERT_EQ(krcc(x, y), oracle::kendall_tau_b(x, y)) << "trial " << t;
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(KrccTest, MatchesBruteForceOnLargerInputs) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 13 + rng.below(188);
    const Vec x = random_vec(rng, n, t % 2 ? 20 : 0), y = random_vec(rng, n, t % 2 ? 20 : 0);
    ASSERT_NEAR(krcc(x, y), oracle::kendall_tau_b(x, y), 1e-12);
  }
}

TEST(SrccTest, EqualsPearsonOfBruteRanks) {
  Rng rng(9);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 3 + rng.below(60);
    const Vec x = random_vec(rng, n, 6), y = random_vec(rng, n, 0);
    if (detail::is_constant(x)) continue;
    ASSERT_NEAR(srcc(x, y), oracle::pearson(oracle::brute_ranks(x), oracle::brute_ranks(y)),
                1e-12);
  }
}

TEST(PlccTest, MatchesRawSumPearson) {
  Rng rng(10);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 3 + rng.below(100);
    const Vec x = random_vec(rng, n, 0), y = random_vec(rng, n, 0);
    ASSERT_NEAR(plcc(x, y), oracle::pearson(x, y), 1e-12);
  }
}

TEST(CorrelationTest, SymmetryRangeAndInvariance) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng.below(40);
    const Vec x = random_vec(rng, n, 0), y = random_vec(rng, n, 0);
    for (Corr f : kAll) {
      const double r = f(std::span<const double>(x), std::span<const double>(y));
      EXPECT_GE(r, -1.0);
      EXPECT_LE(r, 1.0);
      EXPECT_NEAR(r, f(std::span<const double>(y), std::span<const double>(x)), 1e-12);
    }
    Vec ax(x.size()), mono(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      ax[i] = 3.0 * x[i] - 2.0;
      mono[i] = std::exp(4.0 * x[i]);
    }
    EXPECT_NEAR(plcc(ax, y), plcc(x, y), 1e-9);
    EXPECT_EQ(srcc(mono, y), srcc(x, y));
    EXPECT_EQ(krcc(mono, y), krcc(x, y));
  }
}

TEST(CorrelationTest, DegenerateInputsThrow) {
  const Vec flat{2, 2, 2}, v{1, 2, 3};
  for (Corr f : kAll) {
    EXPECT_THROW(f(std::span<const double>(flat), std::span<const double>(v)),
                 UndefinedCorrelation);
    EXPECT_THROW(f(std::span<const double>(v), std::span<const double>(flat)),
                 UndefinedCorrelation);
    const Vec one{1};
    EXPECT_THROW(f(std::span<const double>(one), std::span<const double>(one)),
                 UndefinedCorrelation);
    const Vec shorter{1, 2};
    EXPECT_THROW(f(std::span<const double>(v), std::span<const double>(shorter)), InputError);
  }
}

TEST(ScoreVectorTest, RequiresAlignment) {
  const ScoreVector a{{"m1", "m2", "m3"}, {1, 2, 3}};
  const ScoreVector b{{"m1", "m2", "m3"}, {3, 1, 2}};
  const ScoreVector swapped{{"m2", "m1", "m3"}, {3, 1, 2}};
  EXPECT_NO_THROW(srcc(a, b));
  EXPECT_THROW(srcc(a, swapped), InputError);
  EXPECT_THROW(plcc(a, ScoreVector{{"m1"}, {1, 2, 3}}), InputError);
}

TEST(LevelProfileTest, FormalOnlyAndAbsentLevels) {
  const std::vector<TranscriptEntry> t{
      {Stage::kPreInterview, 0, "pre-interview", "p", 5, false, {}, 5},
      {Stage::kFormal, 1, "a", "q1", 3, true, {}, 4},
      {Stage::kFormal, 1, "a", "q2", 3, false, {}, 4},
      {Stage::kFormal, 2, "a", "q3", 4, true, {}, 5},
  };
  const auto p = level_profile(t);
  EXPECT_EQ(p, (std::map<int, double>{{3, 0.5}, {4, 1.0}}));
  EXPECT_FALSE(p.contains(5));
}

}  // namespace
}  // namespace interview
