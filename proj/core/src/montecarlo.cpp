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

#include "bookmaker/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "bookmaker/error.hpp"

namespace bookmaker {
namespace {

constexpr std::array<std::string_view, 2> kPerfectNames = {"uniform_split", "independent_uniform"};
constexpr std::array<std::string_view, 2> kMarginNames = {"uniform", "binomial"};
constexpr std::array<std::string_view, 3> kCellNames = {"uniform", "binomial_copula", "absolute_shifted_normal"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

std::vector<double> sample_margin(std::size_t k, Count n, Rng& rng, MarginDistribution dist) {
  std::vector<double> w(k);
  for (auto& x : w) {
    x = dist == MarginDistribution::binomial ? static_cast<double>(rng.binomial(n, 1.0 / static_cast<double>(k)))
                                             : rng.uniform01();
  }
  double total = 0.0;
  for (double x : w) total += x;
  if (total <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k));
    return w;
  }
  for (auto& x : w) x /= total;
  return w;
}

Count sample_cell(double expected, Count n, Rng& rng, CellDistribution dist) {
  const double p = std::clamp(expected / static_cast<double>(n), 0.0, 1.0);
  switch (dist) {
    case CellDistribution::uniform:
      return std::llround(rng.uniform01() * 2.0 * expected);
    case CellDistribution::binomial_copula:
      return rng.binomial(n, p);
    case CellDistribution::absolute_shifted_normal:
      break;
  }
  const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  return std::llround(std::abs(expected + sd * rng.normal()));
}

Count total(const std::vector<Count>& cells) {
  Count s = 0;
  for (Count c : cells) s += c;
  return s;
}

// Random unit steps on uniformly chosen cells until the total is n.
void constrain_total(std::vector<Count>& cells, Count n, Rng& rng) {
  Count sum = total(cells);
  while (sum < n) {
    ++cells[rng.uniform_int(cells.size())];
    ++sum;
  }
  std::vector<std::size_t> positive;
  while (sum > n) {
    positive.clear();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i] > 0) positive.push_back(i);
    }
    --cells[positive[rng.uniform_int(positive.size())]];
    --sum;
  }
}

// Table with every margin nonzero and total n, shaped like `cells`.
std::vector<Count> matching_fallback(std::size_t k, const std::vector<Count>& cells, Count n, Rng& rng) {
  std::vector<Count> out(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) out[i * k + i] = 1;
  std::vector<double> cumulative(cells.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) cumulative[i] = (acc += static_cast<double>(cells[i]));
  for (Count r = static_cast<Count>(k); r < n; ++r) {
    const double u = rng.uniform01() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    ++out[static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), cells.size() - 1))];
  }
  return out;
}

// Decrements that never empty a row or column, until the total is n.
std::vector<Count> shrink_keeping_margins(std::size_t k, std::vector<Count> cells, Count n, Rng& rng) {
  std::vector<Count> rows(k, 0), cols(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      rows[i] += cells[i * k + j];
      cols[j] += cells[i * k + j];
    }
  }
  Count sum = total(cells);
  std::vector<std::size_t> safe;
  while (sum > n) {
    safe.clear();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (cells[i * k + j] > 0 && rows[i] > 1 && cols[j] > 1) safe.push_back(i * k + j);
      }
    }
    if (safe.empty()) return matching_fallback(k, cells, n, rng);
    const std::size_t c = safe[rng.uniform_int(safe.size())];
    --cells[c];
    --rows[c / k];
    --cols[c % k];
    --sum;
  }
  return cells;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return v.empty() ? std::nan("") : 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double fraction(std::size_t count, std::size_t of) {
  return of == 0 ? std::nan("") : static_cast<double>(count) / static_cast<double>(of);
}

}  // namespace

std::string_view to_string(PerfectDiagonal d) { return kPerfectNames[static_cast<std::size_t>(d)]; }
std::string_view to_string(MarginDistribution d) { return kMarginNames[static_cast<std::size_t>(d)]; }
std::string_view to_string(CellDistribution d) { return kCellNames[static_cast<std::size_t>(d)]; }

std::optional<PerfectDiagonal> perfect_diagonal_from_string(std::string_view name) {
  return lookup<PerfectDiagonal>(kPerfectNames, name);
}

std::optional<MarginDistribution> margin_distribution_from_string(std::string_view name) {
  return lookup<MarginDistribution>(kMarginNames, name);
}

std::optional<CellDistribution> cell_distribution_from_string(std::string_view name) {
  return lookup<CellDistribution>(kCellNames, name);
}

void SimConfig::validate() const {
  if (k < 2) throw UsageError(fmt::format("k must be at least 2, got {}", k));
  if (n < static_cast<Count>(k)) throw UsageError(fmt::format("n must be at least k = {}, got {}", k, n));
  if (steps < 2) throw UsageError(fmt::format("steps must be at least 2, got {}", steps));
  if (runs_per_step < 1) throw UsageError("runs per step must be at least 1");
  if (!(x > 0.0)) throw UsageError(fmt::format("X must be positive, got {}", x));
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  if (fisher_samples != 0 && fisher_samples < 1000) {
    throw UsageError(fmt::format("Fisher samples must be 0 or at least 1000, got {}", fisher_samples));
  }
}

double SimConfig::level(std::size_t step) const {
  return static_cast<double>(step) / static_cast<double>(steps - 1);
}

ContingencyTable gen_perfect(std::size_t k, Count n, Rng& rng, PerfectDiagonal diagonal) {
  std::vector<Count> cells(k * k, 0);
  std::vector<double> w(k);
  for (auto& x : w) x = rng.uniform01();
  double scale = 2.0 * static_cast<double>(n) / static_cast<double>(k);
  if (diagonal == PerfectDiagonal::uniform_split) {
    double total = 0.0;
    for (double x : w) total += x;
    scale = total > 0.0 ? static_cast<double>(n) / total : 0.0;
  }
  for (std::size_t i = 0; i < k; ++i) cells[i * k + i] = std::llround(w[i] * scale);
  return ContingencyTable(k, std::move(cells));
}

ContingencyTable gen_chance(std::size_t k, Count n, Rng& rng, MarginDistribution margins,
                            CellDistribution cells) {
  const auto prevalence = sample_margin(k, n, rng, margins);
  const auto bias = sample_margin(k, n, rng, margins);
  std::vector<Count> out(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out[i * k + j] = sample_cell(static_cast<double>(n) * bias[i] * prevalence[j], n, rng, cells);
    }
  }
  return ContingencyTable(k, std::move(out));
}

ContingencyTable mix_and_constrain(const ContingencyTable& perfect, const ContingencyTable& chance, double l,
                                   Count n, Rng& rng, bool constrain) {
  if (perfect.k() != chance.k()) {
    throw UsageError(fmt::format("cannot mix a {0}x{0} table with a {1}x{1} table", perfect.k(), chance.k()));
  }
  if (!(l >= 0.0 && l <= 1.0)) throw UsageError(fmt::format("mixing weight must lie in [0, 1], got {}", l));
  const std::size_t k = perfect.k();
  std::vector<Count> cells(k * k);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c] = std::llround(l * static_cast<double>(perfect.cells()[c]) +
                            (1.0 - l) * static_cast<double>(chance.cells()[c]));
  }
  if (constrain) constrain_total(cells, n, rng);
  auto repaired = repair_zero_margins(ContingencyTable(k, std::move(cells)));
  if (!constrain || repaired.n() <= n) return repaired;
  return ContingencyTable(k, shrink_keeping_margins(k, {repaired.cells().begin(), repaired.cells().end()}, n, rng));
}

SimRun simulate_run(const SimConfig& config, std::size_t step, std::size_t run, double level) {
  SimRun r;
  r.step = step;
  r.run = run;
  r.level = level;
  r.seed_stream = stream_id(config.seed, step, run);
  Rng rng(r.seed_stream);
  try {
    const auto perfect = gen_perfect(config.k, config.n, rng, config.perfect_diagonal);
    const auto chance = gen_chance(config.k, config.n, rng, config.margin_distribution, config.cell_distribution);
    r.table = mix_and_constrain(perfect, chance, level, config.n, rng, config.enforce_integer);
    const auto& t = *r.table;

    r.stats = multiclass_stats(t);
    const auto full = full_table_tests(t);
    r.full_chi2 = full.chi2;
    r.full_g2 = full.g2;
    r.kb = chi2_bookmaker_family(t, StatisticKind::KB);
    r.km = chi2_bookmaker_family(t, StatisticKind::KM);
    r.kbm = chi2_bookmaker_family(t, StatisticKind::KBM);
    if (config.fisher_samples > 0) r.p_fisher = fisher_report(t, config.fisher_samples, rng.next_u64()).p_value;
    r.cramers_v_chi2 = cramers_v(full.chi2.value, t.n(), t.k());
    r.cramers_v_g2 = cramers_v(full.g2.value, t.n(), t.k());

    const double e = evenness_factor(t);
    r.ci_null = confidence_interval(0.0, t.n(), e, config.x, CiVariant::null);
    r.ci_empirical = confidence_interval(level, t.n(), e, config.x, CiVariant::empirical);
    r.ci_full = confidence_interval(1.0, t.n(), e, config.x, CiVariant::full);
    r.within_band = std::abs(r.stats.informedness - level) <= r.ci_empirical.half_width;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<SimRun> run_grid(const SimConfig& config) {
  config.validate();
  const std::size_t total_runs = config.steps * config.runs_per_step;
  std::vector<SimRun> runs(total_runs);
  auto work = [&](std::size_t index) {
    const std::size_t step = index / config.runs_per_step;
    runs[index] = simulate_run(config, step, index % config.runs_per_step, config.level(step));
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(total_runs)));
  if (threads == 1) {
    for (std::size_t i = 0; i < total_runs; ++i) work(i);
    return runs;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total_runs; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return runs;
}

CoverageReport coverage_report(std::span<const SimRun> runs, double alpha) {
  if (runs.empty()) throw UsageError("coverage report needs at least one run");
  CoverageReport report;
  std::size_t covered_total = 0, ok_total = 0;

  std::size_t begin = 0;
  while (begin < runs.size()) {
    std::size_t end = begin;
    while (end < runs.size() && runs[end].step == runs[begin].step) ++end;

    StepSummary s;
    s.step = runs[begin].step;
    s.level = runs[begin].level;
    s.runs = end - begin;
    std::size_t covered = 0, chi2 = 0, g2 = 0, fisher = 0, fisher_runs = 0, kb = 0, km = 0, kbm = 0;
    std::vector<double> b, m, bmg, kappa, v;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& r = runs[i];
      if (r.table) {
        const double k = static_cast<double>(r.table->k());
        s.small_n = s.small_n || static_cast<double>(r.table->n()) / (k * k) < 5.0;
      }
      if (!r.ok()) {
        ++s.failed;
        continue;
      }
      covered += r.within_band;
      chi2 += r.full_chi2.significant(alpha);
      g2 += r.full_g2.significant(alpha);
      kb += r.kb.significant(alpha);
      km += r.km.significant(alpha);
      kbm += r.kbm.significant(alpha);
      if (r.p_fisher) {
        ++fisher_runs;
        fisher += *r.p_fisher < alpha;
      }
      b.push_back(r.stats.informedness);
      m.push_back(r.stats.markedness);
      if (r.stats.correlation) bmg.push_back(*r.stats.correlation);
      kappa.push_back(r.stats.kappa);
      v.push_back(r.cramers_v_chi2);
    }
    const std::size_t ok = s.runs - s.failed;
    s.coverage = fraction(covered, ok);
    s.reject_chi2 = fraction(chi2, ok);
    s.reject_g2 = fraction(g2, ok);
    s.reject_fisher = fraction(fisher, fisher_runs);
    s.reject_kb = fraction(kb, ok);
    s.reject_km = fraction(km, ok);
    s.reject_kbm = fraction(kbm, ok);
    s.mean_b = mean(b);
    s.sd_b = stddev(b);
    s.mean_m = mean(m);
    s.sd_m = stddev(m);
    s.mean_bmg = mean(bmg);
    s.sd_bmg = stddev(bmg);
    s.mean_kappa = mean(kappa);
    s.sd_kappa = stddev(kappa);
    s.mean_v = mean(v);
    s.sd_v = stddev(v);

    report.runs += s.runs;
    report.failed += s.failed;
    report.small_n_warning = report.small_n_warning || s.small_n;
    covered_total += covered;
    ok_total += ok;
    report.steps.push_back(s);
    begin = end;
  }
  report.coverage = fraction(covered_total, ok_total);
  return report;
}

}  // namespace bookmaker
