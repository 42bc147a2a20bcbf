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

#include "bookmaker/dichotomous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bookmaker/error.hpp"
#include "int128.hpp"

namespace bookmaker {
namespace {

void require_binary(const ContingencyTable& t) {
  if (t.k() != 2) {
    throw UsageError(fmt::format("dichotomous measures need a 2x2 table, got {}x{}", t.k(), t.k()));
  }
}

// A*D - B*C without overflow for any int64 counts.
double count_determinant(const ContingencyTable& t) {
  const Int128 ad = static_cast<Int128>(t(0, 0)) * t(1, 1);
  const Int128 bc = static_cast<Int128>(t(0, 1)) * t(1, 0);
  return static_cast<double>(ad - bc);
}

double ratio_or_inf(double num, double den) {
  return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
}

}  // namespace

BinaryStats binary_stats(const ContingencyTable& t) {
  require_binary(t);
  require_nonzero_margins(t);

  const double a = static_cast<double>(t(0, 0));
  const double b = static_cast<double>(t(0, 1));
  const double c = static_cast<double>(t(1, 0));
  const double d = static_cast<double>(t(1, 1));
  const double n = static_cast<double>(t.n());
  const double det = count_determinant(t);

  BinaryStats s;
  s.tp = a / n;
  s.fp = b / n;
  s.fn = c / n;
  s.tn = d / n;
  s.rp = (a + c) / n;
  s.rn = (b + d) / n;
  s.pp = (a + b) / n;
  s.pn = (c + d) / n;

  s.recall = a / (a + c);
  s.inverse_recall = d / (b + d);
  s.precision = a / (a + b);
  s.inverse_precision = d / (c + d);
  s.fallout = b / (b + d);
  s.miss_rate = c / (a + c);
  s.f1 = 2 * a / (2 * a + b + c);
  s.inverse_f1 = 2 * d / (2 * d + b + c);
  s.g_measure = std::sqrt(s.recall * s.precision);
  s.jaccard = a / (a + b + c);
  s.accuracy = (a + d) / n;
  s.lr = ratio_or_inf(s.recall, s.fallout);
  s.nlr = ratio_or_inf(s.miss_rate, s.inverse_recall);
  s.roc_distance_sq = s.fallout * s.fallout + s.miss_rate * s.miss_rate;

  // Determinant forms keep B = M = C = 0 exact for proportional rows.
  s.informedness = det / ((a + c) * (b + d));
  s.markedness = det / ((a + b) * (c + d));
  const double bm = s.informedness * s.markedness;
  s.correlation = det == 0.0 ? 0.0 : std::copysign(std::sqrt(std::max(bm, 0.0)), det);
  s.kappa = 2 * det / ((a + b) * (b + d) + (a + c) * (c + d));

  s.etp = s.rp * s.pp;
  s.etn = s.rn * s.pn;
  s.dtp = det / (n * n);
  s.deltap = 2 * s.dtp;
  s.rh = 2 * s.rp * s.rn / (s.rp + s.rn);
  s.ph = 2 * s.pp * s.pn / (s.pp + s.pn);
  s.evenness_r = s.rp * s.rn;
  s.evenness_p = s.pp * s.pn;
  s.prev_g = std::sqrt(s.evenness_r);
  s.bias_g = std::sqrt(s.evenness_p);
  s.evenness_g = s.prev_g * s.bias_g;
  s.skew = s.rn / s.rp;

  s.auc = auc_single_point(s);
  s.wracc = wracc(s);
  return s;
}

double auc_single_point(const BinaryStats& s) { return (s.recall - s.fallout + 1.0) / 2.0; }

double wracc(const BinaryStats& s, const CostModel& cost) {
  const double c = cost.combined();
  if (!(c > 0.0)) throw UsageError("WRAcc needs a positive combined cost/skew factor");
  return 4.0 * c * (s.recall - s.fallout) / ((1.0 + c) * (1.0 + c));
}

double wracc(const BinaryStats& s) { return wracc(s, CostModel{s.skew, 1.0}); }

RegressionCoefficients regression_coefficients(const ContingencyTable& t) {
  require_binary(t);
  require_nonzero_margins(t);
  const double a = static_cast<double>(t(0, 0));
  const double b = static_cast<double>(t(0, 1));
  const double c = static_cast<double>(t(1, 0));
  const double d = static_cast<double>(t(1, 1));
  const double det = count_determinant(t);
  RegressionCoefficients r;
  r.r_p = det / ((a + b) * (c + d));
  r.r_r = det / ((a + c) * (b + d));
  r.r_g = det / std::sqrt((a + c) * (b + d) * (a + b) * (c + d));
  return r;
}

}  // namespace bookmaker
