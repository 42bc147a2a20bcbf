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

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "bookmaker/error.hpp"
#include "int128.hpp"
#include "bookmaker/random.hpp"
#include "bookmaker/significance.hpp"

namespace bookmaker {
namespace {

// Largest N for which every C(N, k) fits in 64 bits.
constexpr Count kExactLimit = 66;

std::uint64_t binomial_coefficient(Count n, Count k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  UInt128 r = 1;
  for (Count i = 1; i <= k; ++i) r = r * static_cast<UInt128>(n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

struct Margins2x2 {
  Count a, r0, r1, c0, lo, hi;
  bool upper;  // one-sided direction
};

Margins2x2 margins_2x2(const ContingencyTable& t) {
  Margins2x2 m;
  m.a = t(0, 0);
  m.r0 = t.row_sum(0);
  m.r1 = t.row_sum(1);
  m.c0 = t.col_sum(0);
  m.lo = std::max<Count>(0, m.c0 - m.r1);
  m.hi = std::min(m.r0, m.c0);
  const Int128 det = static_cast<Int128>(t(0, 0)) * t(1, 1) - static_cast<Int128>(t(0, 1)) * t(1, 0);
  m.upper = det >= 0;
  return m;
}

double fisher_exact_integer(const Margins2x2& m, Sidedness sidedness) {
  std::vector<std::uint64_t> w;
  w.reserve(static_cast<std::size_t>(m.hi - m.lo + 1));
  UInt128 total = 0;
  for (Count x = m.lo; x <= m.hi; ++x) {
    w.push_back(static_cast<std::uint64_t>(static_cast<UInt128>(binomial_coefficient(m.r0, x)) *
                                           binomial_coefficient(m.r1, m.c0 - x)));
    total += w.back();
  }
  const std::uint64_t observed = w[static_cast<std::size_t>(m.a - m.lo)];
  UInt128 tail = 0;
  for (Count x = m.lo; x <= m.hi; ++x) {
    const auto wx = w[static_cast<std::size_t>(x - m.lo)];
    const bool include = sidedness == Sidedness::two ? wx <= observed : (m.upper ? x >= m.a : x <= m.a);
    if (include) tail += wx;
  }
  return static_cast<double>(tail) / static_cast<double>(total);
}

double fisher_exact_lgamma(const Margins2x2& m, Sidedness sidedness) {
  auto log_w = [&](double x) {
    return std::lgamma(m.r0 + 1.0) - std::lgamma(x + 1.0) - std::lgamma(m.r0 - x + 1.0) +
           std::lgamma(m.r1 + 1.0) - std::lgamma(m.c0 - x + 1.0) - std::lgamma(m.r1 - m.c0 + x + 1.0);
  };
  std::vector<double> lw;
  for (Count x = m.lo; x <= m.hi; ++x) lw.push_back(log_w(static_cast<double>(x)));
  const double peak = *std::max_element(lw.begin(), lw.end());
  const double observed = lw[static_cast<std::size_t>(m.a - m.lo)];
  double total = 0.0, tail = 0.0;
  for (Count x = m.lo; x <= m.hi; ++x) {
    const double lx = lw[static_cast<std::size_t>(x - m.lo)];
    const double px = std::exp(lx - peak);
    total += px;
    const bool include = sidedness == Sidedness::two ? lx <= observed + 1e-7 * std::max(1.0, std::abs(observed))
                                                     : (m.upper ? x >= m.a : x <= m.a);
    if (include) tail += px;
  }
  return std::min(1.0, tail / total);
}

}  // namespace

double fisher_exact_2x2(const ContingencyTable& t, Sidedness sidedness) {
  if (t.k() != 2) throw UsageError(fmt::format("exact Fisher test needs a 2x2 table, got {}x{}", t.k(), t.k()));
  if (t.n() == 0) return 1.0;
  const auto m = margins_2x2(t);
  if (m.lo == m.hi) return 1.0;
  return t.n() <= kExactLimit ? fisher_exact_integer(m, sidedness) : fisher_exact_lgamma(m, sidedness);
}

double fisher_montecarlo_kxk(const ContingencyTable& t, std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) throw UsageError(fmt::format("Fisher Monte Carlo needs at least 1000 samples, got {}", samples));
  if (t.n() == 0) return 1.0;
  const std::size_t k = t.k();
  const auto n = static_cast<std::size_t>(t.n());

  std::vector<double> lnfact(n + 1, 0.0);
  for (std::size_t i = 2; i <= n; ++i) lnfact[i] = lnfact[i - 1] + std::log(static_cast<double>(i));

  double observed = 0.0;
  for (Count c : t.cells()) observed += lnfact[static_cast<std::size_t>(c)];
  const double threshold = observed - 1e-7 * std::max(1.0, std::abs(observed));

  std::vector<std::size_t> columns;
  columns.reserve(n);
  for (std::size_t j = 0; j < k; ++j) columns.insert(columns.end(), static_cast<std::size_t>(t.col_sum(j)), j);
  const auto rows = t.row_sums();

  Rng rng(mix64(seed ^ 0x46495348ULL));
  std::vector<std::size_t> cell(k);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    rng.shuffle(std::span<std::size_t>(columns));
    double stat = 0.0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::fill(cell.begin(), cell.end(), 0);
      for (Count r = 0; r < rows[i]; ++r) ++cell[columns[pos++]];
      for (std::size_t c : cell) stat += lnfact[c];
    }
    if (stat >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

SignificanceReport fisher_report(const ContingencyTable& t, std::size_t samples, std::uint64_t seed) {
  SignificanceReport r;
  r.kind = StatisticKind::fisher;
  r.p_value = t.k() == 2 ? fisher_exact_2x2(t, Sidedness::two) : fisher_montecarlo_kxk(t, samples, seed);
  r.value = r.p_value;
  r.df = 0;
  r.df_alt = 0;
  r.n = t.n();
  return r;
}

}  // namespace bookmaker
