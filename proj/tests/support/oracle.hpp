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

#ifndef BOOKMAKER_TESTS_SUPPORT_ORACLE_HPP_
#define BOOKMAKER_TESTS_SUPPORT_ORACLE_HPP_

// Reference implementations used to derive expected values. They are
// written from the textbook definitions and share no code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bookmaker/contingency.hpp"

namespace oracle {

using bookmaker::ContingencyTable;
using bookmaker::Count;

// Cells of a 2x2 table as named counts.
struct Cells {
  double a, b, c, d;  // TP FP / FN TN
  double n() const { return a + b + c + d; }
};

inline Cells cells(const ContingencyTable& t) {
  return {static_cast<double>(t(0, 0)), static_cast<double>(t(0, 1)), static_cast<double>(t(1, 0)),
          static_cast<double>(t(1, 1))};
}

inline double tpr(const Cells& x) { return x.a / (x.a + x.c); }
inline double fpr(const Cells& x) { return x.b / (x.b + x.d); }
inline double tnr(const Cells& x) { return x.d / (x.b + x.d); }
inline double ppv(const Cells& x) { return x.a / (x.a + x.b); }
inline double npv(const Cells& x) { return x.d / (x.c + x.d); }
inline double informedness(const Cells& x) { return tpr(x) + tnr(x) - 1.0; }
inline double markedness(const Cells& x) { return ppv(x) + npv(x) - 1.0; }
inline double matthews(const Cells& x) {
  return (x.a * x.d - x.b * x.c) / std::sqrt((x.a + x.b) * (x.c + x.d) * (x.a + x.c) * (x.b + x.d));
}
inline double cohen_kappa(const Cells& x) {
  const double n = x.n();
  const double po = (x.a + x.d) / n;
  const double pe = ((x.a + x.b) * (x.a + x.c) + (x.c + x.d) * (x.b + x.d)) / (n * n);
  return (po - pe) / (1.0 - pe);
}

// Pairs tallied with a plain map, labels in sorted order.
inline std::vector<std::vector<Count>> tally(const std::vector<std::pair<std::string, std::string>>& pairs,
                                              std::vector<std::string>& labels) {
  std::map<std::string, int> index;
  for (const auto& [p, a] : pairs) {
    index[p];
    index[a];
  }
  labels.clear();
  int i = 0;
  for (auto& [label, idx] : index) {
    idx = i++;
    labels.push_back(label);
  }
  std::vector<std::vector<Count>> rows(labels.size(), std::vector<Count>(labels.size(), 0));
  for (const auto& [p, a] : pairs) ++rows[index[p]][index[a]];
  return rows;
}

// Prevalence-weighted one-vs-rest informedness computed with explicit loops.
inline double multiclass_informedness(const ContingencyTable& t) {
  const std::size_t k = t.k();
  const double n = static_cast<double>(t.n());
  double sum = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    double tp = 0, col = 0, row = 0;
    tp = static_cast<double>(t(l, l));
    for (std::size_t j = 0; j < k; ++j) row += static_cast<double>(t(l, j));
    for (std::size_t i = 0; i < k; ++i) col += static_cast<double>(t(i, l));
    const double fp = row - tp;
    const double prev = col / n;
    sum += prev * (tp / col - fp / (n - col));
  }
  return sum;
}

// Pearson statistic summed over every cell.
inline double full_chi2(const ContingencyTable& t) {
  const std::size_t k = t.k();
  const double n = static_cast<double>(t.n());
  double s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double r = 0, c = 0;
      for (std::size_t m = 0; m < k; ++m) {
        r += static_cast<double>(t(i, m));
        c += static_cast<double>(t(m, j));
      }
      const double e = r * c / n;
      s += (static_cast<double>(t(i, j)) - e) * (static_cast<double>(t(i, j)) - e) / e;
    }
  }
  return s;
}

inline double mutual_information(const ContingencyTable& t) {
  const std::size_t k = t.k();
  const double n = static_cast<double>(t.n());
  double mi = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double pij = static_cast<double>(t(i, j)) / n;
      if (pij == 0) continue;
      double r = 0, c = 0;
      for (std::size_t m = 0; m < k; ++m) {
        r += static_cast<double>(t(i, m)) / n;
        c += static_cast<double>(t(m, j)) / n;
      }
      mi += pij * std::log(pij / (r * c));
    }
  }
  return mi;
}

// Determinant by cofactor expansion (small K only).
inline double determinant(const std::vector<std::vector<double>>& m) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double det = 0;
  for (std::size_t col = 0; col < k; ++col) {
    std::vector<std::vector<double>> minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<double> row;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != col) row.push_back(m[i][j]);
      }
      minor.push_back(row);
    }
    det += (col % 2 ? -1.0 : 1.0) * m[0][col] * determinant(minor);
  }
  return det;
}

// Pascal's triangle; exact up to row 62 in 64 bits.
inline const std::vector<std::vector<std::uint64_t>>& pascal() {
  static const auto rows = [] {
    std::vector<std::vector<std::uint64_t>> p(63);
    for (std::size_t n = 0; n < p.size(); ++n) {
      p[n].assign(n + 1, 1);
      for (std::size_t k = 1; k < n; ++k) p[n][k] = p[n - 1][k - 1] + p[n - 1][k];
    }
    return p;
  }();
  return rows;
}

// Enumerates every table sharing the margins of [[a, b], [c, d]] and returns
// the hypergeometric tail as (numerator, denominator) in exact integers.
struct FisherCounts {
  std::uint64_t one_sided = 0;
  std::uint64_t two_sided = 0;
  std::uint64_t total = 0;
};

inline FisherCounts fisher_enumerate(Count a, Count b, Count c, Count d) {
  const auto& p = pascal();
  const Count r0 = a + b, r1 = c + d, c0 = a + c, c1 = b + d;
  auto weight = [&](Count x) -> std::uint64_t {
    // x in cell (0,0); remaining cells follow from the margins
    const Count y = r0 - x, z = c0 - x, w = r1 - z;
    if (x < 0 || y < 0 || z < 0 || w < 0) return 0;
    return p[static_cast<std::size_t>(r0)][static_cast<std::size_t>(x)] *
           p[static_cast<std::size_t>(r1)][static_cast<std::size_t>(z)];
  };
  (void)c1;
  FisherCounts out;
  const std::uint64_t observed = weight(a);
  const bool upper = a * d - b * c >= 0;
  for (Count x = 0; x <= r0; ++x) {
    const auto w = weight(x);
    if (w == 0) continue;
    out.total += w;
    if (w <= observed) out.two_sided += w;
    if (upper ? x >= a : x <= a) out.one_sided += w;
  }
  return out;
}

// Upper tail of the chi-squared density by adaptive Simpson quadrature in
// long double, integrating from x to far into the tail.
inline long double chi2_density(long double t, int r) {
  const long double h = static_cast<long double>(r) / 2.0L;
  return std::exp((h - 1.0L) * std::log(t) - t / 2.0L - h * std::log(2.0L) - std::lgamma(h));
}

inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b,
                           long double fa, long double fm, long double fb, long double whole, long double tol,
                           int depth) {
  const long double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const long double flm = f(lm), frm = f(rm);
  const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const long double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double chi2_sf_quadrature(double x, int r) {
  auto f = [r](long double t) { return chi2_density(t, r); };
  const long double lo = x;
  const long double span = 400.0L + 20.0L * r;
  // Integrate in geometric segments so the relative tolerance tracks the tail size.
  long double sum = 0;
  long double a = lo;
  long double width = std::max<long double>(0.25L, lo / 8);
  while (a < lo + span) {
    const long double b = a + width;
    const long double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    const long double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    const long double tol = std::max<long double>(std::fabs(whole) * 1e-14L, 1e-300L);
    sum += simpson(f, a, b, fa, fm, fb, whole, tol, 50);
    a = b;
    width *= 1.5L;
  }
  return static_cast<double>(sum);
}

// Random 2x2 tables with every margin nonzero.
inline ContingencyTable random_2x2(std::mt19937_64& gen, Count max_cell = 60) {
  std::uniform_int_distribution<Count> cell(0, max_cell);
  while (true) {
    std::vector<Count> v{cell(gen), cell(gen), cell(gen), cell(gen)};
    if (v[0] + v[1] > 0 && v[2] + v[3] > 0 && v[0] + v[2] > 0 && v[1] + v[3] > 0) {
      return ContingencyTable(2, v);
    }
  }
}

inline ContingencyTable random_kxk(std::mt19937_64& gen, std::size_t k, Count max_cell = 30) {
  std::uniform_int_distribution<Count> cell(0, max_cell);
  while (true) {
    std::vector<Count> v(k * k);
    for (auto& x : v) x = cell(gen);
    ContingencyTable t(k, v);
    if (!bookmaker::has_zero_margin(t)) return t;
  }
}

}  // namespace oracle

#endif  // BOOKMAKER_TESTS_SUPPORT_ORACLE_HPP_
