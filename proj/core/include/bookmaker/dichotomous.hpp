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

#ifndef BOOKMAKER_DICHOTOMOUS_HPP_
#define BOOKMAKER_DICHOTOMOUS_HPP_

#include "bookmaker/contingency.hpp"

namespace bookmaker {

// Every measure of a 2x2 table. Rates are fractions in [0, 1]; the
// chance-corrected measures (informedness, markedness, correlation, kappa,
// wracc) lie in [-1, 1].
//
// Likelihood ratios become +infinity when their denominator vanishes
// (fallout = 0 for lr, inverse recall = 0 for nlr).
struct BinaryStats {
  // Cell and margin probabilities.
  double tp = 0, fp = 0, fn = 0, tn = 0;
  double rp = 0, rn = 0, pp = 0, pn = 0;

  // Surface measures.
  double recall = 0;             // tpr, sensitivity
  double inverse_recall = 0;     // tnr, specificity
  double precision = 0;          // tpa, confidence
  double inverse_precision = 0;  // tna
  double fallout = 0;            // fpr
  double miss_rate = 0;          // fnr
  double f1 = 0;                 // PS+, Dice
  double inverse_f1 = 0;         // PS-, F1 of the inverse problem
  double g_measure = 0;          // sqrt(recall * precision)
  double jaccard = 0;
  double accuracy = 0;           // Rand accuracy
  double lr = 0;
  double nlr = 0;
  double wracc = 0;              // at the table's own skew
  double auc = 0;                // single-point ROC trapezoid
  double roc_distance_sq = 0;    // fpr^2 + fnr^2, squared distance to (0, 1)

  // Chance-corrected measures.
  double informedness = 0;  // B, DeltaP'
  double markedness = 0;    // M, DeltaP
  double correlation = 0;   // C = BMG = Matthews
  double kappa = 0;         // Cohen

  // Intermediates.
  double etp = 0, etn = 0;
  double dtp = 0;      // tp - etp, also det of the normalized table
  double deltap = 0;   // dtp - dtn = 2 dtp
  double rh = 0;       // harmonic mean form 2 rp rn / (rp + rn)
  double ph = 0;       // 2 pp pn / (pp + pn)
  double prev_g = 0;   // sqrt(rp rn)
  double bias_g = 0;   // sqrt(pp pn)
  double evenness_r = 0;  // rp rn
  double evenness_p = 0;  // pp pn
  double evenness_g = 0;  // prev_g * bias_g
  double skew = 0;        // cs = rn / rp
};

// Requires K = 2 and all four margins nonzero (DataError otherwise).
BinaryStats binary_stats(const ContingencyTable& t);

// (tpr - fpr + 1) / 2.
double auc_single_point(const BinaryStats& s);

// 4c (tpr - fpr) / (1 + c)^2 with c = cost.combined(). With the table's own
// skew this is 4 (Recall - Bias) Prev; with c = 1 it is informedness.
double wracc(const BinaryStats& s, const CostModel& cost);
double wracc(const BinaryStats& s);

// Regression slopes of R on P (r_p, markedness) and P on R (r_r,
// informedness), and their signed geometric mean r_g (Matthews).
struct RegressionCoefficients {
  double r_p = 0;
  double r_r = 0;
  double r_g = 0;
};

RegressionCoefficients regression_coefficients(const ContingencyTable& t);

}  // namespace bookmaker

#endif  // BOOKMAKER_DICHOTOMOUS_HPP_
