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

#ifndef BOOKMAKER_CONFIDENCE_HPP_
#define BOOKMAKER_CONFIDENCE_HPP_

#include <optional>
#include <string_view>

#include "bookmaker/contingency.hpp"

namespace bookmaker {

// Deviation profiles for the error of an informedness estimate b.
enum class SseRule {
  constant_one,         // 1
  one_minus_absB,       // 1 - |b|
  weighted_arithmetic,  // 1 - 2|b| + 2b^2
  geometric,            // sqrt(|b| - b^2)
  harmonic,             // |b| - b^2
};

// Which hypothesis a band is drawn around.
enum class CiVariant {
  null,       // B = 0, constant_one
  empirical,  // B = estimate, weighted_arithmetic
  full,       // B = 1, one_minus_absB
};

std::string_view to_string(SseRule rule);
std::string_view to_string(CiVariant variant);
std::optional<SseRule> sse_rule_from_string(std::string_view name);
std::optional<CiVariant> ci_variant_from_string(std::string_view name);

SseRule default_rule(CiVariant variant);

// Throws UsageError unless |b| <= 1.
double sse_profile(double b, SseRule rule);

// PrevG * BiasG * K^2, the geometric means taken over the K margins.
// Equals 1 for uniform margins.
double evenness_factor(const ContingencyTable& t);

// Plain standard error profile / sqrt(n - 1).
double standard_error(double profile, Count n);

// Two-tailed (1.96 at 0.05) or one-tailed (1.65) normal multiplier.
double normal_multiplier(double alpha, bool two_tailed = true);

inline constexpr double kTwoTailed95 = 1.96;
inline constexpr double kOneTailed95 = 1.65;

struct ConfidenceInterval {
  double center = 0.0;
  double half_width = 0.0;
  CiVariant variant = CiVariant::empirical;
  SseRule rule = SseRule::weighted_arithmetic;
  double x = kTwoTailed95;
  Count n = 0;
  double evenness = 1.0;

  double lo() const { return center - half_width; }
  double hi() const { return center + half_width; }
  bool contains(double b) const { return b >= lo() && b <= hi(); }
};

// half_width = x * sse_profile(center, rule) / sqrt(2 E (n - 1)).
// DataError for n < 2; UsageError for E <= 0 or x <= 0.
ConfidenceInterval confidence_interval(double center, Count n, double evenness, double x,
                                       CiVariant variant);
ConfidenceInterval confidence_interval(double center, Count n, double evenness, double x,
                                       CiVariant variant, SseRule rule);

struct SystemEstimate {
  double b = 0.0;
  Count n = 0;
  double evenness = 1.0;
};

struct SystemComparison {
  ConfidenceInterval a_ci;
  ConfidenceInterval b_ci;
  bool a_in_b = false;  // a's estimate lies inside b's interval
  bool b_in_a = false;
  bool mutually_exclusive = false;
};

SystemComparison compare_systems(const SystemEstimate& a, const SystemEstimate& b, double x,
                                 CiVariant variant = CiVariant::empirical);

}  // namespace bookmaker

#endif  // BOOKMAKER_CONFIDENCE_HPP_
