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

#ifndef BOOKMAKER_MONTECARLO_HPP_
#define BOOKMAKER_MONTECARLO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bookmaker/confidence.hpp"
#include "bookmaker/contingency.hpp"
#include "bookmaker/multiclass.hpp"
#include "bookmaker/random.hpp"
#include "bookmaker/significance.hpp"

namespace bookmaker {

// How the diagonal of the fully informed table is drawn.
enum class PerfectDiagonal {
  uniform_split,        // uniform random weights scaled to n; rounding leaves the total within k/2 of n
  independent_uniform,  // each cell round(U(0, 2n/k)); total is n only in expectation
};

enum class MarginDistribution {
  uniform,   // uniform random weights, renormalized
  binomial,  // Binomial(n, 1/k) per margin, renormalized
};

enum class CellDistribution {
  uniform,                  // round(U(0, 2e))
  binomial_copula,          // Binomial(n, e / n) by inverse CDF
  absolute_shifted_normal,  // round(|e + sd Z|), sd = sqrt(n p (1 - p))
};

std::string_view to_string(PerfectDiagonal d);
std::string_view to_string(MarginDistribution d);
std::string_view to_string(CellDistribution d);
std::optional<PerfectDiagonal> perfect_diagonal_from_string(std::string_view name);
std::optional<MarginDistribution> margin_distribution_from_string(std::string_view name);
std::optional<CellDistribution> cell_distribution_from_string(std::string_view name);

struct SimConfig {
  std::size_t k = 4;
  Count n = 128;
  std::size_t steps = 11;  // levels 0, 1/(steps-1), ..., 1
  std::size_t runs_per_step = 10;
  PerfectDiagonal perfect_diagonal = PerfectDiagonal::uniform_split;
  MarginDistribution margin_distribution = MarginDistribution::binomial;
  CellDistribution cell_distribution = CellDistribution::absolute_shifted_normal;
  bool enforce_integer = true;  // constrain every table to total exactly n
  std::uint64_t seed = 0;
  double x = kTwoTailed95;
  double alpha = 0.05;
  std::size_t fisher_samples = 10000;  // 0 skips the Fisher test
  unsigned threads = 1;

  // UsageError on an invalid combination.
  void validate() const;
  double level(std::size_t step) const;
};

// Diagonal table; every off-diagonal cell is zero.
ContingencyTable gen_perfect(std::size_t k, Count n, Rng& rng,
                             PerfectDiagonal diagonal = PerfectDiagonal::uniform_split);

ContingencyTable gen_chance(std::size_t k, Count n, Rng& rng, MarginDistribution margins,
                            CellDistribution cells);

// Cellwise l * perfect + (1 - l) * chance, rounded, then nudged by random
// unit steps to total n, with zero margins repaired. When `constrain` is
// false only the rounding and repair are applied.
ContingencyTable mix_and_constrain(const ContingencyTable& perfect, const ContingencyTable& chance,
                                   double l, Count n, Rng& rng, bool constrain = true);

struct SimRun {
  std::size_t step = 0;
  std::size_t run = 0;
  double level = 0.0;
  std::uint64_t seed_stream = 0;
  std::optional<ContingencyTable> table;
  std::string error;  // non-empty when the run could not be evaluated

  MulticlassStats stats;
  SignificanceReport full_chi2;
  SignificanceReport full_g2;
  SignificanceReport kb;
  SignificanceReport km;
  SignificanceReport kbm;
  std::optional<double> p_fisher;
  double cramers_v_chi2 = 0.0;
  double cramers_v_g2 = 0.0;
  ConfidenceInterval ci_null;
  ConfidenceInterval ci_empirical;  // around the step level
  ConfidenceInterval ci_full;
  bool within_band = false;

  bool ok() const { return error.empty(); }
};

// One run on its own substream; the same (seed, step, run) always yields
// the same result.
SimRun simulate_run(const SimConfig& config, std::size_t step, std::size_t run, double level);

// steps x runs_per_step runs in (step, run) order.
std::vector<SimRun> run_grid(const SimConfig& config);

struct StepSummary {
  std::size_t step = 0;
  double level = 0.0;
  std::size_t runs = 0;
  std::size_t failed = 0;
  double coverage = 0.0;
  double reject_chi2 = 0.0;
  double reject_g2 = 0.0;
  double reject_fisher = 0.0;  // NaN when Fisher was skipped
  double reject_kb = 0.0;
  double reject_km = 0.0;
  double reject_kbm = 0.0;
  double mean_b = 0.0, sd_b = 0.0;
  double mean_m = 0.0, sd_m = 0.0;
  double mean_bmg = 0.0, sd_bmg = 0.0;  // over runs where BMG is defined
  double mean_kappa = 0.0, sd_kappa = 0.0;
  double mean_v = 0.0, sd_v = 0.0;  // Cramer's V from full chi-squared
  bool small_n = false;  // some table has n / k^2 < 5
};

struct CoverageReport {
  std::vector<StepSummary> steps;
  std::size_t runs = 0;
  std::size_t failed = 0;
  double coverage = 0.0;
  // Expected count per cell n / k^2 below 5.
  bool small_n_warning = false;
};

// UsageError on an empty sequence.
CoverageReport coverage_report(std::span<const SimRun> runs, double alpha);

void write_runs_csv(std::ostream& out, std::span<const SimRun> runs);
void write_summary_csv(std::ostream& out, const CoverageReport& report);

}  // namespace bookmaker

#endif  // BOOKMAKER_MONTECARLO_HPP_
