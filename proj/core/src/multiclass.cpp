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

#include "bookmaker/multiclass.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bookmaker/dichotomous.hpp"
#include "bookmaker/error.hpp"

namespace bookmaker {
namespace {

struct Dichotomies {
  std::vector<BinaryStats> stats;  // one-vs-rest, index = label
};

Dichotomies one_vs_rest(const ContingencyTable& t) {
  Dichotomies d;
  d.stats.reserve(t.k());
  for (std::size_t l = 0; l < t.k(); ++l) d.stats.push_back(binary_stats(dichotomize(t, l)));
  return d;
}

double weighted_sum(const std::vector<double>& weights, const std::vector<double>& values) {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
  return s;
}

double signed_pow(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

double product(const std::vector<double>& v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

struct MeanForms {
  double plus, minus, hash;
};

MeanForms evenness_forms(const std::vector<double>& margin) {
  const double k = static_cast<double>(margin.size());
  double arith = 0.0, inv = 0.0;
  for (double m : margin) {
    const double term = m * (1.0 - m);
    arith += term;
    inv += 1.0 / term;
  }
  return {std::pow(product(margin), 2.0 / k), arith / k, k / inv};
}

}  // namespace

double bookmaker_informedness(const ContingencyTable& t, Weighting w) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const auto d = one_vs_rest(t);
  std::vector<double> b(t.k());
  for (std::size_t l = 0; l < t.k(); ++l) b[l] = d.stats[l].informedness;
  return weighted_sum(w == Weighting::prevalence ? m.prevalence : m.bias, b);
}

double multiclass_markedness(const ContingencyTable& t, Weighting w) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const auto d = one_vs_rest(t);
  std::vector<double> mk(t.k());
  for (std::size_t c = 0; c < t.k(); ++c) mk[c] = d.stats[c].markedness;
  return weighted_sum(w == Weighting::bias ? m.bias : m.prevalence, mk);
}

std::optional<double> correlation_bmg(double informedness, double markedness) {
  const double bm = informedness * markedness;
  if (bm < 0.0) return std::nullopt;
  if (bm == 0.0) return 0.0;
  return std::copysign(std::sqrt(bm), informedness);
}

std::optional<double> correlation_bmg(const ContingencyTable& t) {
  return correlation_bmg(bookmaker_informedness(t), multiclass_markedness(t));
}

double mutual_information(const ContingencyTable& t) {
  require_nonzero_margins(t);
  const auto nt = normalize(t);
  const auto m = margins(t);
  double mi = 0.0;
  for (std::size_t l = 0; l < t.k(); ++l) {
    for (std::size_t c = 0; c < t.k(); ++c) {
      const double p = nt(l, c);
      if (p > 0.0) mi += p * std::log(p / (m.bias[l] * m.prevalence[c]));
    }
  }
  return std::max(mi, 0.0);
}

double conditional_entropy(const ContingencyTable& t) {
  require_nonzero_margins(t);
  const auto nt = normalize(t);
  const auto m = margins(t);
  double h = 0.0;
  for (std::size_t l = 0; l < t.k(); ++l) {
    for (std::size_t c = 0; c < t.k(); ++c) {
      const double p = nt(l, c);
      if (p > 0.0) h -= p * std::log(p / m.bias[l]);
    }
  }
  return std::max(h, 0.0);
}

double determinant_exponent(ExponentRule rule, std::size_t k) {
  const double kk = static_cast<double>(k);
  return rule == ExponentRule::two_over_k ? 2.0 / kk : 4.0 / (3.0 * kk - 2.0);
}

DeterminantEstimates det_estimates(const ContingencyTable& t, ExponentRule rule) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const double det = determinant(normalize(t));
  const double e = determinant_exponent(rule, t.k());
  const double scaled = signed_pow(det, e);
  const double even_r = std::pow(product(m.prevalence), e);
  const double even_p = std::pow(product(m.bias), e);
  DeterminantEstimates out;
  out.exponent = e;
  out.informedness = scaled / even_r;
  out.markedness = scaled / even_p;
  out.correlation = scaled / std::sqrt(even_r * even_p);
  return out;
}

EvennessVariants evenness_variants(const ContingencyTable& t) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const auto r = evenness_forms(m.prevalence);
  const auto p = evenness_forms(m.bias);
  EvennessVariants ev;
  ev.r_plus = r.plus;
  ev.p_plus = p.plus;
  ev.g_plus = std::sqrt(r.plus * p.plus);
  ev.r_minus = r.minus;
  ev.p_minus = p.minus;
  ev.g_minus = std::sqrt(r.minus * p.minus);
  ev.r_hash = r.hash;
  ev.p_hash = p.hash;
  ev.g_hash = std::sqrt(r.hash * p.hash);
  return ev;
}

double multiclass_kappa(const ContingencyTable& t) {
  const auto m = margins(t);
  double observed = 0.0, chance = 0.0;
  for (std::size_t i = 0; i < t.k(); ++i) {
    observed += static_cast<double>(t(i, i));
    chance += m.prevalence[i] * m.bias[i];
  }
  observed /= static_cast<double>(t.n());
  if (chance >= 1.0) {
    throw DataError("kappa is undefined: expected agreement is 1 (single-class table)");
  }
  return (observed - chance) / (1.0 - chance);
}

MacroAverages macro_averages(const ContingencyTable& t) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const auto d = one_vs_rest(t);
  MacroAverages out;
  for (std::size_t l = 0; l < t.k(); ++l) {
    out.wav += m.prevalence[l] * d.stats[l].recall;
    out.gav += m.prevalence[l] * d.stats[l].g_measure;
    out.fav += m.prevalence[l] * d.stats[l].f1;
  }
  return out;
}

MulticlassStats multiclass_stats(const ContingencyTable& t) {
  require_nonzero_margins(t);
  const auto m = margins(t);
  const auto d = one_vs_rest(t);

  MulticlassStats s;
  s.label_informedness.resize(t.k());
  s.class_markedness.resize(t.k());
  for (std::size_t l = 0; l < t.k(); ++l) {
    s.label_informedness[l] = d.stats[l].informedness;
    s.class_markedness[l] = d.stats[l].markedness;
    s.macro.wav += m.prevalence[l] * d.stats[l].recall;
    s.macro.gav += m.prevalence[l] * d.stats[l].g_measure;
    s.macro.fav += m.prevalence[l] * d.stats[l].f1;
  }
  s.informedness = weighted_sum(m.prevalence, s.label_informedness);
  s.markedness = weighted_sum(m.bias, s.class_markedness);
  s.correlation = correlation_bmg(s.informedness, s.markedness);
  s.mutual_information = mutual_information(t);
  s.conditional_entropy = conditional_entropy(t);
  s.det = determinant(normalize(t));
  s.evenness = evenness_variants(t);
  s.kappa = multiclass_kappa(t);
  s.det_estimates = det_estimates(t, ExponentRule::two_over_k);
  s.det_estimates_alt = det_estimates(t, ExponentRule::inverse_3k_minus_2);
  return s;
}

}  // namespace bookmaker
