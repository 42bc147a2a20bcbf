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

#include <array>
#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "bookmaker/error.hpp"

namespace bookmaker {
namespace {

constexpr std::array<std::string_view, 5> kRuleNames = {"constant_one", "one_minus_absB", "weighted_arithmetic",
                                                        "geometric", "harmonic"};
constexpr std::array<std::string_view, 3> kVariantNames = {"null", "empirical", "full"};

double geometric_mean(const std::vector<double>& v) {
  double log_sum = 0.0;
  for (double x : v) log_sum += std::log(x);
  return std::exp(log_sum / static_cast<double>(v.size()));
}

}  // namespace

std::string_view to_string(SseRule rule) { return kRuleNames[static_cast<std::size_t>(rule)]; }
std::string_view to_string(CiVariant variant) { return kVariantNames[static_cast<std::size_t>(variant)]; }

std::optional<SseRule> sse_rule_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == name) return static_cast<SseRule>(i);
  }
  return std::nullopt;
}

std::optional<CiVariant> ci_variant_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == name) return static_cast<CiVariant>(i);
  }
  return std::nullopt;
}

SseRule default_rule(CiVariant variant) {
  switch (variant) {
    case CiVariant::null:
      return SseRule::constant_one;
    case CiVariant::full:
      return SseRule::one_minus_absB;
    case CiVariant::empirical:
      break;
  }
  return SseRule::weighted_arithmetic;
}

double sse_profile(double b, SseRule rule) {
  if (!(std::abs(b) <= 1.0)) throw UsageError(fmt::format("sse profile needs |b| <= 1, got {}", b));
  const double a = std::abs(b);
  switch (rule) {
    case SseRule::constant_one:
      return 1.0;
    case SseRule::one_minus_absB:
      return 1.0 - a;
    case SseRule::weighted_arithmetic:
      return 1.0 - 2.0 * a + 2.0 * a * a;
    case SseRule::geometric:
      return std::sqrt(std::max(a - a * a, 0.0));
    case SseRule::harmonic:
      return a - a * a;
  }
  return 1.0;
}

double evenness_factor(const ContingencyTable& t) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const double k = static_cast<double>(t.k());
  return geometric_mean(m.prevalence) * geometric_mean(m.bias) * k * k;
}

double standard_error(double profile, Count n) {
  if (n < 2) throw DataError(fmt::format("standard error needs n >= 2, got {}", n));
  return profile / std::sqrt(static_cast<double>(n - 1));
}

double normal_multiplier(double alpha, bool two_tailed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(boost::math::complement(standard, two_tailed ? alpha / 2.0 : alpha));
}

ConfidenceInterval confidence_interval(double center, Count n, double evenness, double x, CiVariant variant) {
  return confidence_interval(center, n, evenness, x, variant, default_rule(variant));
}

ConfidenceInterval confidence_interval(double center, Count n, double evenness, double x, CiVariant variant,
                                       SseRule rule) {
  if (n < 2) throw DataError(fmt::format("confidence interval needs n >= 2, got {}", n));
  if (!(evenness > 0.0)) throw UsageError(fmt::format("evenness factor must be positive, got {}", evenness));
  if (!(x > 0.0)) throw UsageError(fmt::format("normal multiplier must be positive, got {}", x));
  ConfidenceInterval ci;
  ci.center = center;
  ci.variant = variant;
  ci.rule = rule;
  ci.x = x;
  ci.n = n;
  ci.evenness = evenness;
  ci.half_width = x * sse_profile(center, rule) / std::sqrt(2.0 * evenness * static_cast<double>(n - 1));
  return ci;
}

SystemComparison compare_systems(const SystemEstimate& a, const SystemEstimate& b, double x, CiVariant variant) {
  SystemComparison c;
  c.a_ci = confidence_interval(a.b, a.n, a.evenness, x, variant);
  c.b_ci = confidence_interval(b.b, b.n, b.evenness, x, variant);
  c.a_in_b = c.b_ci.contains(a.b);
  c.b_in_a = c.a_ci.contains(b.b);
  c.mutually_exclusive = !c.a_in_b && !c.b_in_a;
  return c;
}

}  // namespace bookmaker
