// Copyright 2026 The Bookmaker Authors.
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

#include "bookmaker/confidence.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "bookmaker/error.hpp"

namespace bookmaker {
namespace {

TEST(SseProfile, ShapeOfEachRule) {
  EXPECT_DOUBLE_EQ(sse_profile(0.5, SseRule::weighted_arithmetic), 0.5);
  EXPECT_DOUBLE_EQ(sse_profile(0.0, SseRule::weighted_arithmetic), 1.0);
  EXPECT_DOUBLE_EQ(sse_profile(1.0, SseRule::weighted_arithmetic), 1.0);
  EXPECT_DOUBLE_EQ(sse_profile(-1.0, SseRule::weighted_arithmetic), 1.0);
  EXPECT_DOUBLE_EQ(sse_profile(1.0, SseRule::one_minus_absB), 0.0);
  EXPECT_DOUBLE_EQ(sse_profile(-0.3, SseRule::constant_one), 1.0);
  EXPECT_DOUBLE_EQ(sse_profile(0.5, SseRule::geometric), 0.5);
  EXPECT_DOUBLE_EQ(sse_profile(0.5, SseRule::harmonic), 0.25);
  for (double b = -1.0; b <= 1.0; b += 0.05) {
    EXPECT_GE(sse_profile(b, SseRule::weighted_arithmetic), 0.5 - 1e-15);
    EXPECT_LE(sse_profile(b, SseRule::weighted_arithmetic), 1.0 + 1e-15);
  }
  EXPECT_THROW(sse_profile(1.5, SseRule::constant_one), UsageError);
}

TEST(EvennessFactor, Examples) {
  EXPECT_DOUBLE_EQ(evenness_factor(ContingencyTable::from_rows({{5, 5}, {5, 5}})), 1.0);
  EXPECT_NEAR(evenness_factor(ContingencyTable::from_rows({{56, 20}, {12, 12}})),
              std::sqrt(0.68 * 0.32) * std::sqrt(0.76 * 0.24) * 4, 1e-15);
  EXPECT_NEAR(evenness_factor(ContingencyTable::from_rows({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})), 1.0, 1e-15);
}

TEST(NormalMultiplier, Quantiles) {
  EXPECT_NEAR(normal_multiplier(0.05), 1.959964, 1e-6);
  EXPECT_NEAR(normal_multiplier(0.05, false), 1.644854, 1e-6);
  EXPECT_THROW(normal_multiplier(0.0), UsageError);
}

TEST(ConfidenceInterval, HalfWidthFormula) {
  const auto ci = confidence_interval(0.0, 101, 1.0, 1.96, CiVariant::null);
  EXPECT_NEAR(ci.half_width, 1.96 / std::sqrt(200.0), 1e-15);
  EXPECT_NEAR(ci.half_width, 0.1386, 5e-5);
  EXPECT_EQ(confidence_interval(1.0, 50, 1.0, 1.96, CiVariant::full).half_width, 0.0);
  EXPECT_LT(confidence_interval(0.3, 1000000, 1.0, 1.96, CiVariant::empirical).half_width, 1e-3);
  EXPECT_EQ(confidence_interval(0.3, 50, 1.0, 1.96, CiVariant::empirical).rule, SseRule::weighted_arithmetic);
  EXPECT_THROW(confidence_interval(0.0, 1, 1.0, 1.96, CiVariant::null), DataError);
  EXPECT_THROW(confidence_interval(0.0, 10, 0.0, 1.96, CiVariant::null), UsageError);
}

TEST(ConfidenceInterval, LowerEvennessWidensBand) {
  const auto even = confidence_interval(0.2, 100, 1.0, 1.96, CiVariant::empirical);
  const auto skewed = confidence_interval(0.2, 100, 0.5, 1.96, CiVariant::empirical);
  EXPECT_NEAR(skewed.half_width, even.half_width * std::sqrt(2.0), 1e-15);
}

// X = 2 error bars of unit profile around 0 and 1 overlap until n = 17,
// where they touch, and separate from n = 18.
TEST(ConfidenceInterval, NullAndFullBarsMeet) {
  auto gap = [](Count n) { return 1.0 - 2 * 2.0 * standard_error(1.0, n); };
  EXPECT_LT(gap(15), 0.0);
  EXPECT_LT(gap(16), 0.0);
  EXPECT_NEAR(gap(17), 0.0, 1e-15);
  EXPECT_GT(gap(18), 0.0);
}

TEST(CompareSystems, Examples) {
  const auto same = compare_systems({0.4, 200, 1.0}, {0.4, 200, 1.0}, 1.96);
  EXPECT_TRUE(same.a_in_b);
  EXPECT_TRUE(same.b_in_a);
  EXPECT_FALSE(same.mutually_exclusive);

  const auto far = compare_systems({0.9, 1000, 1.0}, {0.0, 1000, 1.0}, 1.96);
  EXPECT_TRUE(far.mutually_exclusive);
  EXPECT_FALSE(far.a_in_b);

  const auto close = compare_systems({0.05, 20, 1.0}, {0.0, 20, 1.0}, 1.96);
  EXPECT_TRUE(close.a_in_b);
  EXPECT_TRUE(close.b_in_a);
  EXPECT_FALSE(close.mutually_exclusive);
}

TEST(Names, RoundTrip) {
  for (auto r : {SseRule::constant_one, SseRule::one_minus_absB, SseRule::weighted_arithmetic, SseRule::geometric,
                 SseRule::harmonic}) {
    EXPECT_EQ(sse_rule_from_string(to_string(r)), r);
  }
  for (auto v : {CiVariant::null, CiVariant::empirical, CiVariant::full}) {
    EXPECT_EQ(ci_variant_from_string(to_string(v)), v);
  }
  EXPECT_EQ(default_rule(CiVariant::null), SseRule::constant_one);
  EXPECT_EQ(default_rule(CiVariant::full), SseRule::one_minus_absB);
}

}  // namespace
}  // namespace bookmaker
