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

#ifndef BOOKMAKER_MULTICLASS_HPP_
#define BOOKMAKER_MULTICLASS_HPP_

#include <optional>
#include <vector>

#include "bookmaker/contingency.hpp"

namespace bookmaker {

// How the one-vs-rest dichotomous values are averaged. Informedness is
// prevalence-weighted and markedness bias-weighted by default; the other
// choice is available for experiments with bet-weighted averaging.
enum class Weighting { prevalence, bias };

// Three families of evenness over the K margins:
//   plus  = squared geometric mean, (prod margins)^(2/K)
//   minus = arithmetic mean of the dichotomous terms m (1 - m)
//   hash  = harmonic mean of the same dichotomous terms
// The G forms are the geometric mean of the R and P forms. At K = 2 all
// three families coincide with rp rn / pp pn.
struct EvennessVariants {
  double r_plus = 0, p_plus = 0, g_plus = 0;
  double r_minus = 0, p_minus = 0, g_minus = 0;
  double r_hash = 0, p_hash = 0, g_hash = 0;
};

enum class ExponentRule {
  two_over_k,          // e = 2 / K
  inverse_3k_minus_2,  // e = 4 / (3K - 2), normalized so K = 2 gives 1
};

double determinant_exponent(ExponentRule rule, std::size_t k);

// det^e over the matching evenness raised to the same exponent. Exact at K = 2.
struct DeterminantEstimates {
  double markedness = 0;
  double informedness = 0;
  double correlation = 0;
  double exponent = 0;
};

// Prevalence-weighted dichotomous recall (wav), G-measure (gav) and F1 (fav).
struct MacroAverages {
  double wav = 0;
  double gav = 0;
  double fav = 0;
};

struct MulticlassStats {
  double informedness = 0;
  double markedness = 0;
  std::optional<double> correlation;  // empty when B and M differ in sign
  double mutual_information = 0;      // nats
  double conditional_entropy = 0;     // H(R|P), nats
  double det = 0;
  EvennessVariants evenness;
  double kappa = 0;
  std::vector<double> label_informedness;  // B(l)
  std::vector<double> class_markedness;    // M(c)
  MacroAverages macro;
  DeterminantEstimates det_estimates;      // 2/K rule
  DeterminantEstimates det_estimates_alt;  // 3K-2 rule
};

// All of the functions below require every row and column to be nonzero.

double bookmaker_informedness(const ContingencyTable& t, Weighting w = Weighting::prevalence);
double multiclass_markedness(const ContingencyTable& t, Weighting w = Weighting::bias);

// sign(B) sqrt(B M); empty when B and M have strictly opposite signs.
std::optional<double> correlation_bmg(double informedness, double markedness);
std::optional<double> correlation_bmg(const ContingencyTable& t);

double mutual_information(const ContingencyTable& t);
double conditional_entropy(const ContingencyTable& t);

DeterminantEstimates det_estimates(const ContingencyTable& t, ExponentRule rule);
EvennessVariants evenness_variants(const ContingencyTable& t);

// Cohen's kappa; DataError when chance agreement is 1.
double multiclass_kappa(const ContingencyTable& t);

MacroAverages macro_averages(const ContingencyTable& t);

MulticlassStats multiclass_stats(const ContingencyTable& t);

}  // namespace bookmaker

#endif  // BOOKMAKER_MULTICLASS_HPP_
