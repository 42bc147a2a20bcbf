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

#ifndef BOOKMAKER_SIGNIFICANCE_HPP_
#define BOOKMAKER_SIGNIFICANCE_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "bookmaker/contingency.hpp"

namespace bookmaker {

enum class StatisticKind {
  plusP_chi2,  // predicted-positive row
  plusR_chi2,  // real-positive column
  plusP_g2,
  plusR_g2,
  KB,
  KM,
  KBM,
  XB,
  XM,
  XBM,
  convB,
  convM,
  convBM,
  full_chi2,
  full_g2,
  fisher,
};

std::string_view to_string(StatisticKind kind);
std::optional<StatisticKind> statistic_kind_from_string(std::string_view name);

// `df` is the degrees of freedom used for p_value. `df_alt` is the other
// convention ((K-1)^2 for alpha-oriented tests, K-1 for beta-oriented) so a
// caller can re-evaluate. For fisher, value is the p-value and df = 0.
struct SignificanceReport {
  StatisticKind kind = StatisticKind::full_chi2;
  double value = 0.0;
  int df = 1;
  int df_alt = 1;
  double p_value = 1.0;
  bool yates = false;     // Yates correction changed at least one cell term
  bool williams = false;
  Count n = 0;

  bool significant(double alpha) const { return p_value < alpha; }
};

// Upper tail of the chi-squared distribution, Q(r/2, x/2). Returns 1 for x <= 0.
double chi2_sf(double x, double r);

enum class Target { predicted_positive, real_positive };

// Pearson chi-squared over the two cells of the first row (predicted
// positive) or first column (real positive) of a 2x2 table. With `yates`,
// cells whose expectation is below 5 use (|O - E| - 0.5)^2 / E.
SignificanceReport chi2_positive(const ContingencyTable& t, Target target, bool yates = false);

// 2 sum O ln(O / E) over the same two cells.
SignificanceReport g2_positive(const ContingencyTable& t, Target target);

// kind must be one of KB..convBM. With K classes, N items and the
// arithmetic-mean evenness E_R, E_P, E_G:
//   KB = K N B^2 E_R, KM = K N M^2 E_P, KBM = K N B M E_G
//   X* = (K - 1) K*, conv* = (K - 1) N {B^2, M^2, B M}
SignificanceReport chi2_bookmaker_family(const ContingencyTable& t, StatisticKind kind);

struct FullTableTests {
  SignificanceReport chi2;
  SignificanceReport g2;  // 2 N MI
};

FullTableTests full_table_tests(const ContingencyTable& t, bool yates = false);

// sqrt(chi2 / (N (K - 1))).
double cramers_v(double chi2, Count n, std::size_t k);

enum class Sidedness { one, two };

// Exact hypergeometric p for a 2x2 table. One-sided follows the direction
// of the observed association (AD - BC >= 0 tests the upper tail). Two-sided
// sums every table no more probable than the observed one.
double fisher_exact_2x2(const ContingencyTable& t, Sidedness sidedness = Sidedness::two);

// Fraction of fixed-margin random tables no more probable than the observed
// one. Deterministic for a given seed. Needs samples >= 1000.
double fisher_montecarlo_kxk(const ContingencyTable& t, std::size_t samples, std::uint64_t seed);

SignificanceReport fisher_report(const ContingencyTable& t, std::size_t samples = 100000,
                                 std::uint64_t seed = 0);

enum class WilliamsMode { goodness_of_fit, independence };

// Divides a G^2 value by q = 1 + (a^2 - 1) / (6 N r).
SignificanceReport williams_correction(const SignificanceReport& g2, const ContingencyTable& t,
                                       WilliamsMode mode);

// Sellke bound on the Bayes factor for a p-value, with the implied
// posterior probabilities of the null (alpha_post) and the alternative
// (beta_post) at even prior odds.
struct PosthocCalibration {
  double p = 0.0;
  double L = 0.0;
  double alpha_post = 0.0;
  double beta_post = 0.0;
};

// Empty outside 0 < p < 1/e.
std::optional<PosthocCalibration> posthoc_calibration(double p);

}  // namespace bookmaker

#endif  // BOOKMAKER_SIGNIFICANCE_HPP_
