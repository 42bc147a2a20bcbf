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

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "bookmaker/error.hpp"
#include "bookmaker/significance.hpp"

namespace bookmaker {
namespace {

constexpr std::array<std::string_view, 16> kKindNames = {
    "plusP_chi2", "plusR_chi2", "plusP_g2", "plusR_g2", "KB",        "KM",      "KBM",    "XB",
    "XM",         "XBM",        "convB",    "convM",    "convBM",    "full_chi2", "full_g2", "fisher",
};

}  // namespace

std::string_view to_string(StatisticKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<StatisticKind> statistic_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<StatisticKind>(i);
  }
  return std::nullopt;
}

double chi2_sf(double x, double r) {
  if (!(r > 0.0)) throw UsageError(fmt::format("chi-squared degrees of freedom must be > 0, got {}", r));
  if (std::isnan(x)) throw NumericError("chi-squared statistic is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  try {
    return boost::math::gamma_q(r / 2.0, x / 2.0);
  } catch (const std::exception& e) {
    throw NumericError(fmt::format("chi2_sf({}, {}) failed: {}", x, r, e.what()));
  }
}

double cramers_v(double chi2, Count n, std::size_t k) {
  if (n <= 0 || k < 2) return 0.0;
  return std::sqrt(std::max(chi2, 0.0) / (static_cast<double>(n) * static_cast<double>(k - 1)));
}

std::optional<PosthocCalibration> posthoc_calibration(double p) {
  if (!(p > 0.0) || !(p < 1.0 / std::numbers::e)) return std::nullopt;
  PosthocCalibration c;
  c.p = p;
  c.L = -std::numbers::e * p * std::log(p);
  c.alpha_post = 1.0 / (1.0 + 1.0 / c.L);
  c.beta_post = 1.0 / (1.0 + c.L);
  return c;
}

}  // namespace bookmaker
