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

#include "bookmaker/significance.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "bookmaker/error.hpp"
#include "bookmaker/multiclass.hpp"

namespace bookmaker {
namespace {

void require_binary(const ContingencyTable& t) {
  if (t.k() != 2) {
    throw UsageError(fmt::format("single-prediction tests need a 2x2 table, got {}x{}", t.k(), t.k()));
  }
}

double expected_count(const ContingencyTable& t, std::size_t row, std::size_t col) {
  return static_cast<double>(t.row_sum(row)) * static_cast<double>(t.col_sum(col)) /
         static_cast<double>(t.n());
}

struct CellTerm {
  double value;
  bool corrected;
};

CellTerm pearson_term(double observed, double expected, bool yates) {
  double dev = std::abs(observed - expected);
  bool corrected = false;
  if (yates && expected < 5.0) {
    dev = std::max(dev - 0.5, 0.0);
    corrected = true;
  }
  return {dev * dev / expected, corrected};
}

double g_term(double observed, double expected) {
  return observed > 0.0 ? observed * std::log(observed / expected) : 0.0;
}

std::array<std::pair<std::size_t, std::size_t>, 2> target_cells(Target target) {
  if (target == Target::predicted_positive) return {{{0, 0}, {0, 1}}};
  return {{{0, 0}, {1, 0}}};
}

int squared_df(std::size_t k) { return static_cast<int>((k - 1) * (k - 1)); }

SignificanceReport make_report(StatisticKind kind, double value, int df, int df_alt, Count n) {
  SignificanceReport r;
  r.kind = kind;
  r.value = value;
  r.df = df;
  r.df_alt = df_alt;
  r.p_value = chi2_sf(value, df);
  r.n = n;
  return r;
}

}  // namespace

SignificanceReport chi2_positive(const ContingencyTable& t, Target target, bool yates) {
  require_binary(t);
  require_nonzero_margins(t);
  double value = 0.0;
  bool corrected = false;
  for (auto [row, col] : target_cells(target)) {
    auto term = pearson_term(static_cast<double>(t(row, col)), expected_count(t, row, col), yates);
    value += term.value;
    corrected = corrected || term.corrected;
  }
  auto kind = target == Target::predicted_positive ? StatisticKind::plusP_chi2 : StatisticKind::plusR_chi2;
  auto report = make_report(kind, value, 1, 1, t.n());
  report.yates = corrected;
  return report;
}

SignificanceReport g2_positive(const ContingencyTable& t, Target target) {
  require_binary(t);
  require_nonzero_margins(t);
  double sum = 0.0;
  for (auto [row, col] : target_cells(target)) {
    sum += g_term(static_cast<double>(t(row, col)), expected_count(t, row, col));
  }
  auto kind = target == Target::predicted_positive ? StatisticKind::plusP_g2 : StatisticKind::plusR_g2;
  return make_report(kind, std::max(2.0 * sum, 0.0), 1, 1, t.n());
}

SignificanceReport chi2_bookmaker_family(const ContingencyTable& t, StatisticKind kind) {
  require_nonzero_margins(t);
  const double k = static_cast<double>(t.k());
  const double n = static_cast<double>(t.n());
  const double b = bookmaker_informedness(t);
  const double m = multiclass_markedness(t);
  const auto ev = evenness_variants(t);
  const int beta_df = static_cast<int>(t.k() - 1);
  const int alpha_df = squared_df(t.k());

  switch (kind) {
    case StatisticKind::KB:
      return make_report(kind, k * n * b * b * ev.r_minus, beta_df, alpha_df, t.n());
    case StatisticKind::KM:
      return make_report(kind, k * n * m * m * ev.p_minus, beta_df, alpha_df, t.n());
    case StatisticKind::KBM:
      return make_report(kind, std::max(k * n * b * m * ev.g_minus, 0.0), beta_df, alpha_df, t.n());
    case StatisticKind::XB:
      return make_report(kind, (k - 1) * k * n * b * b * ev.r_minus, alpha_df, beta_df, t.n());
    case StatisticKind::XM:
      return make_report(kind, (k - 1) * k * n * m * m * ev.p_minus, alpha_df, beta_df, t.n());
    case StatisticKind::XBM:
      return make_report(kind, std::max((k - 1) * k * n * b * m * ev.g_minus, 0.0), alpha_df, beta_df,
                         t.n());
    case StatisticKind::convB:
      return make_report(kind, (k - 1) * n * b * b, beta_df, alpha_df, t.n());
    case StatisticKind::convM:
      return make_report(kind, (k - 1) * n * m * m, beta_df, alpha_df, t.n());
    case StatisticKind::convBM:
      return make_report(kind, std::max((k - 1) * n * b * m, 0.0), beta_df, alpha_df, t.n());
    default:
      throw UsageError(fmt::format("'{}' is not a Bookmaker chi-squared statistic", to_string(kind)));
  }
}

FullTableTests full_table_tests(const ContingencyTable& t, bool yates) {
  require_nonzero_margins(t);
  double chi2 = 0.0, g = 0.0;
  bool corrected = false;
  for (std::size_t i = 0; i < t.k(); ++i) {
    for (std::size_t j = 0; j < t.k(); ++j) {
      const double observed = static_cast<double>(t(i, j));
      const double expected = expected_count(t, i, j);
      auto term = pearson_term(observed, expected, yates);
      chi2 += term.value;
      corrected = corrected || term.corrected;
      g += g_term(observed, expected);
    }
  }
  const int alpha_df = squared_df(t.k());
  const int beta_df = static_cast<int>(t.k() - 1);
  FullTableTests out{make_report(StatisticKind::full_chi2, chi2, alpha_df, beta_df, t.n()),
                     make_report(StatisticKind::full_g2, std::max(2.0 * g, 0.0), alpha_df, beta_df, t.n())};
  out.chi2.yates = corrected;
  return out;
}

SignificanceReport williams_correction(const SignificanceReport& g2, const ContingencyTable& t,
                                       WilliamsMode mode) {
  if (g2.kind != StatisticKind::full_g2 && g2.kind != StatisticKind::plusP_g2 &&
      g2.kind != StatisticKind::plusR_g2) {
    throw UsageError(fmt::format("Williams correction applies to G^2 only, not '{}'", to_string(g2.kind)));
  }
  require_nonzero_margins(t);
  const double k = static_cast<double>(t.k());
  const double n = static_cast<double>(t.n());
  double a2_minus_1 = 0.0, r = 0.0;
  if (mode == WilliamsMode::goodness_of_fit) {
    a2_minus_1 = k * k - 1.0;
    r = k - 1.0;
  } else {
    const auto mg = margins(t);
    double inv_prev = 0.0, inv_bias = 0.0;
    for (std::size_t i = 0; i < t.k(); ++i) {
      inv_prev += 1.0 / mg.prevalence[i];
      inv_bias += 1.0 / mg.bias[i];
    }
    // K / harmonic mean = sum of reciprocals
    a2_minus_1 = (inv_prev - 1.0) * (inv_bias - 1.0);
    r = (k - 1.0) * (k - 1.0);
  }
  const double q = 1.0 + a2_minus_1 / (6.0 * n * r);
  SignificanceReport out = g2;
  out.value = g2.value / q;
  out.p_value = chi2_sf(out.value, out.df);
  out.williams = true;
  return out;
}

}  // namespace bookmaker
