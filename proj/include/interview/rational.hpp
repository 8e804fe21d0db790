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

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>

#include "interview/error.hpp"

namespace interview {

// Exact non-negative fraction, used wherever an accuracy is compared against
// a threshold so that "acc == beta" is well defined.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Best rational approximation with denominator <= max_den (continued
  // fractions). Recovers short decimals such as 0.5, 0.35, 0.2 exactly.
  static Ratio from_double(double value, std::int64_t max_den = 1'000'000) {
    if (!std::isfinite(value) || value < 0.0) {
      throw InputError("ratio must be finite and non-negative");
    }
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = value;
    for (int iter = 0; iter < 64; ++iter) {
      const double a_real = std::floor(x);
      if (a_real > 1e15) break;
      const auto a = static_cast<std::int64_t>(a_real);
      const std::int64_t q2 = q0 + a * q1;
      if (q2 > max_den) break;
      const std::int64_t p2 = p0 + a * p1;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      const double frac = x - a_real;
      if (frac < 1e-12 || std::fabs(static_cast<double>(p1) / q1 - value) < 1e-15) break;
      x = 1.0 / frac;
    }
    if (q1 == 0) return {static_cast<std::int64_t>(value), 1};
    return {p1, q1};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Tally of judged questions.
struct Tally {
  int asked = 0;
  int correct = 0;

  void add(bool ok) {
    ++asked;
    correct += ok ? 1 : 0;
  }
  double accuracy() const { return asked == 0 ? 0.0 : static_cast<double>(correct) / asked; }
  bool operator==(const Tally&) const = default;
};

// Sign of (correct/asked - threshold), computed exactly. asked must be > 0.
inline std::strong_ordering compare_accuracy(const Tally& t, const Ratio& threshold) {
  const std::int64_t lhs = static_cast<std::int64_t>(t.correct) * threshold.den;
  const std::int64_t rhs = threshold.num * static_cast<std::int64_t>(t.asked);
  return lhs <=> rhs;
}

}  // namespace interview
