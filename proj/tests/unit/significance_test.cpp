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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bookmaker/dichotomous.hpp"
#include "bookmaker/error.hpp"
#include "bookmaker/multiclass.hpp"
#include "oracle.hpp"

namespace bookmaker {
namespace {

ContingencyTable table1() { return ContingencyTable::from_rows({{56, 20}, {12, 12}}); }
ContingencyTable table2() { return ContingencyTable::from_rows({{30, 12}, {30, 28}}); }
ContingencyTable independent() { return ContingencyTable::from_rows({{10, 30}, {5, 15}}); }

TEST(Chi2Sf, KnownPoints) {
  EXPECT_NEAR(chi2_sf(3.841, 1), 0.05, 5e-4);
  EXPECT_NEAR(chi2_sf(3.841458820694124, 1), 0.05, 1e-12);
  EXPECT_NEAR(chi2_sf(2.0, 2), std::exp(-1.0), 1e-15);
  EXPECT_EQ(chi2_sf(0.0, 3), 1.0);
  EXPECT_EQ(chi2_sf(-1.0, 3), 1.0);
  EXPECT_EQ(chi2_sf(INFINITY, 3), 0.0);
  EXPECT_THROW(chi2_sf(1.0, 0.0), UsageError);
  EXPECT_THROW(chi2_sf(NAN, 1.0), NumericError);
}

TEST(Chi2Sf, MatchesQuadrature) {
  const double grid[] = {0.01, 0.1, 0.5, 1.0, 2.0, 3.841, 5.0, 10.0, 20.0, 40.0, 80.0};
  for (int r = 1; r <= 10; ++r) {
    for (double x : grid) {
      const double want = oracle::chi2_sf_quadrature(x, r);
      EXPECT_NEAR(chi2_sf(x, r) / want, 1.0, 1e-8) << "x=" << x << " r=" << r;
    }
  }
}

TEST(PositiveTests, Table2Values) {
  EXPECT_NEAR(chi2_positive(table1(), Target::predicted_positive).value, 1.13, 0.01);
  EXPECT_NEAR(chi2_positive(table2(), Target::predicted_positive).value, 2.29, 0.01);
  EXPECT_EQ(chi2_positive(independent(), Target::predicted_positive).value, 0.0);
  EXPECT_EQ(g2_positive(independent(), Target::real_positive).value, 0.0);
}

// Predicted-positive chi-squared is N B^2 E_R / Bias; the real-positive
// statistic is its dual N M^2 E_P / Prev.
TEST(PositiveTests, MatchEvennessForms) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_2x2(gen);
    const auto s = binary_stats(t);
    const double n = static_cast<double>(t.n());
    const double p = chi2_positive(t, Target::predicted_positive).value;
    const double r = chi2_positive(t, Target::real_positive).value;
    EXPECT_NEAR(p, n * s.informedness * s.informedness * s.evenness_r / s.pp, 1e-9 * std::max(1.0, p));
    EXPECT_NEAR(r, n * s.markedness * s.markedness * s.evenness_p / s.rp, 1e-9 * std::max(1.0, r));
  }
}

TEST(PositiveTests, G2DirectSummation) {
  const auto t = table1();
  // Cells (0,0) and (0,1) with expectations 76*68/100 and 76*32/100.
  const double want = 2 * (56 * std::log(56 / 51.68) + 20 * std::log(20 / 24.32));
  EXPECT_NEAR(g2_positive(t, Target::predicted_positive).value, want, 1e-12);
}

TEST(PositiveTests, YatesOnlyForSmallExpectations) {
  const auto big = chi2_positive(table1(), Target::predicted_positive, true);
  EXPECT_FALSE(big.yates);
  EXPECT_EQ(big.value, chi2_positive(table1(), Target::predicted_positive).value);
  const auto small = ContingencyTable::from_rows({{4, 1}, {1, 4}});
  const auto corrected = chi2_positive(small, Target::predicted_positive, true);
  EXPECT_TRUE(corrected.yates);
  EXPECT_LT(corrected.value, chi2_positive(small, Target::predicted_positive).value);
}

TEST(BookmakerFamily, Table2Values) {
  const auto t = table1();
  EXPECT_NEAR(chi2_bookmaker_family(t, StatisticKind::KB).value, 1.72, 0.01);
  EXPECT_NEAR(chi2_bookmaker_family(t, StatisticKind::KM).value, 2.05, 0.01);
  EXPECT_NEAR(chi2_bookmaker_family(t, StatisticKind::KBM).value, 1.87, 0.01);
  EXPECT_NEAR(chi2_bookmaker_family(t, StatisticKind::convBM).value, 4.70, 0.01);
  const auto t2 = table2();
  EXPECT_NEAR(chi2_bookmaker_family(t2, StatisticKind::KB).value, 1.92, 0.01);
  EXPECT_NEAR(chi2_bookmaker_family(t2, StatisticKind::KM).value, 1.89, 0.01);
  EXPECT_NEAR(chi2_bookmaker_family(t2, StatisticKind::KBM).value, 1.91, 0.01);
}

TEST(BookmakerFamily, XEqualsKAtK2) {
  std::mt19937_64 gen(32);
  for (int i = 0; i < 200; ++i) {
    const auto t = oracle::random_2x2(gen);
    EXPECT_EQ(chi2_bookmaker_family(t, StatisticKind::XB).value, chi2_bookmaker_family(t, StatisticKind::KB).value);
    EXPECT_EQ(chi2_bookmaker_family(t, StatisticKind::XM).value, chi2_bookmaker_family(t, StatisticKind::KM).value);
  }
}

TEST(BookmakerFamily, DegreesOfFreedom) {
  const auto t = ContingencyTable::from_rows({{20, 3, 2}, {4, 18, 5}, {1, 6, 25}});
  const auto kb = chi2_bookmaker_family(t, StatisticKind::KB);
  EXPECT_EQ(kb.df, 2);
  EXPECT_EQ(kb.df_alt, 4);
  const auto xb = chi2_bookmaker_family(t, StatisticKind::XB);
  EXPECT_EQ(xb.df, 4);
  EXPECT_NEAR(xb.value, 2 * kb.value, 1e-12);
  EXPECT_THROW(chi2_bookmaker_family(t, StatisticKind::full_chi2), UsageError);
}

TEST(FullTable, MatchesOracleAndEqualsNBMAt2x2) {
  std::mt19937_64 gen(33);
  for (int i = 0; i < 500; ++i) {
    const auto t = oracle::random_2x2(gen);
    const auto f = full_table_tests(t);
    const auto s = binary_stats(t);
    const double n = static_cast<double>(t.n());
    EXPECT_NEAR(f.chi2.value, oracle::full_chi2(t), 1e-9 * std::max(1.0, f.chi2.value));
    EXPECT_NEAR(f.chi2.value, n * s.informedness * s.markedness, 1e-9 * std::max(1.0, f.chi2.value));
    EXPECT_NEAR(f.g2.value, 2 * n * oracle::mutual_information(t), 1e-9 * std::max(1.0, f.g2.value));
  }
  for (std::size_t k = 3; k <= 5; ++k) {
    for (int i = 0; i < 50; ++i) {
      const auto t = oracle::random_kxk(gen, k);
      EXPECT_NEAR(full_table_tests(t).chi2.value, oracle::full_chi2(t), 1e-9 * oracle::full_chi2(t) + 1e-12);
    }
  }
}

TEST(FullTable, Table1AndIndependence) {
  const auto f = full_table_tests(table1());
  EXPECT_NEAR(f.chi2.value, 4.70, 0.005);
  EXPECT_NEAR(cramers_v(f.chi2.value, 100, 2), 0.2168, 5e-5);
  const auto z = full_table_tests(independent());
  EXPECT_NEAR(z.chi2.value, 0.0, 1e-12);
  EXPECT_NEAR(z.g2.value, 0.0, 1e-12);
  EXPECT_NEAR(z.chi2.p_value, 1.0, 1e-9);
}

TEST(FullTable, LinearInScale) {
  std::mt19937_64 gen(34);
  for (int i = 0; i < 100; ++i) {
    const auto t = oracle::random_kxk(gen, 3);
    const auto f = full_table_tests(t);
    const auto f3 = full_table_tests(t.scaled(3));
    EXPECT_NEAR(f3.chi2.value, 3 * f.chi2.value, 1e-9 * std::max(1.0, f3.chi2.value));
    EXPECT_NEAR(f3.g2.value, 3 * f.g2.value, 1e-9 * std::max(1.0, f3.g2.value));
  }
}

TEST(CramersV, Bounds) {
  EXPECT_EQ(cramers_v(0.0, 50, 3), 0.0);
  EXPECT_DOUBLE_EQ(cramers_v(100.0, 50, 3), 1.0);
}

TEST(Fisher, SmallExamples) {
  EXPECT_DOUBLE_EQ(fisher_exact_2x2(ContingencyTable::from_rows({{1, 0}, {0, 1}}), Sidedness::one), 0.5);
  EXPECT_LT(fisher_exact_2x2(table1()), 0.05);
  EXPECT_EQ(fisher_exact_2x2(ContingencyTable::from_rows({{0, 0}, {0, 0}})), 1.0);
  EXPECT_THROW(fisher_exact_2x2(ContingencyTable::from_rows({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}})), UsageError);
}

TEST(Fisher, MatchesEnumerationExactly) {
  for (Count n = 1; n <= 20; ++n) {
    for (Count a = 0; a <= n; ++a) {
      for (Count b = 0; a + b <= n; ++b) {
        for (Count c = 0; a + b + c <= n; ++c) {
          const Count d = n - a - b - c;
          const auto t = ContingencyTable::from_rows({{a, b}, {c, d}});
          const auto want = oracle::fisher_enumerate(a, b, c, d);
          const double total = static_cast<double>(want.total);
          ASSERT_EQ(fisher_exact_2x2(t, Sidedness::two), static_cast<double>(want.two_sided) / total);
          ASSERT_EQ(fisher_exact_2x2(t, Sidedness::one), static_cast<double>(want.one_sided) / total);
        }
      }
    }
  }
}

TEST(Fisher, LgammaPathAgreesAtBoundary) {
  // N = 66 is the last exact size; compare with a proportional table just above it.
  const auto exact = fisher_exact_2x2(ContingencyTable::from_rows({{20, 13}, {10, 23}}));
  const auto approx = fisher_exact_2x2(ContingencyTable::from_rows({{40, 26}, {20, 46}}));
  EXPECT_GT(exact, approx);
  const auto big = fisher_exact_2x2(ContingencyTable::from_rows({{560, 200}, {120, 120}}));
  EXPECT_LT(big, 1e-6);
}

TEST(Fisher, MonteCarloAgreesWithExact) {
  std::mt19937_64 gen(35);
  for (int i = 0; i < 4; ++i) {
    const auto t = oracle::random_2x2(gen, 12);
    const double exact = fisher_exact_2x2(t);
    const double mc = fisher_montecarlo_kxk(t, 100000, 7 + static_cast<std::uint64_t>(i));
    const double se = std::sqrt(std::max(exact * (1 - exact), 1e-6) / 100000.0);
    EXPECT_NEAR(mc, exact, 3 * se) << "table " << i;
  }
}

TEST(Fisher, MonteCarloExtremes) {
  const auto perfect = ContingencyTable::from_rows({{10, 0, 0, 0}, {0, 10, 0, 0}, {0, 0, 10, 0}, {0, 0, 0, 10}});
  EXPECT_LT(fisher_montecarlo_kxk(perfect, 10000, 1), 0.01);
  const auto uniform = ContingencyTable::from_rows({{3, 3, 3}, {3, 3, 3}, {3, 3, 3}});
  EXPECT_GT(fisher_montecarlo_kxk(uniform, 10000, 1), 0.5);
  EXPECT_EQ(fisher_montecarlo_kxk(uniform, 2000, 9), fisher_montecarlo_kxk(uniform, 2000, 9));
  EXPECT_THROW(fisher_montecarlo_kxk(uniform, 999, 1), UsageError);
}

TEST(Williams, IndependenceExample) {
  const auto t = ContingencyTable::from_rows({{25, 25}, {25, 25}});
  SignificanceReport g;
  g.kind = StatisticKind::full_g2;
  g.value = 10.0;
  g.df = 1;
  const auto c = williams_correction(g, t, WilliamsMode::independence);
  EXPECT_NEAR(g.value / c.value, 1.0 + 9.0 / 600.0, 1e-15);
  EXPECT_TRUE(c.williams);
  const auto gof = williams_correction(g, t, WilliamsMode::goodness_of_fit);
  EXPECT_NEAR(g.value / gof.value, 1.0 + 3.0 / 600.0, 1e-15);
}

TEST(Williams, AlwaysShrinksAndVanishesWithN) {
  std::mt19937_64 gen(36);
  for (int i = 0; i < 100; ++i) {
    const auto t = oracle::random_kxk(gen, 3);
    const auto g = full_table_tests(t).g2;
    if (g.value == 0.0) continue;
    const auto c = williams_correction(g, t, WilliamsMode::independence);
    EXPECT_LT(c.value, g.value);
    const auto big = t.scaled(100000);
    const auto gb = full_table_tests(big).g2;
    EXPECT_NEAR(williams_correction(gb, big, WilliamsMode::independence).value / gb.value, 1.0, 1e-4);
  }
  EXPECT_THROW(williams_correction(full_table_tests(table1()).chi2, table1(), WilliamsMode::independence),
               UsageError);
}

TEST(Posthoc, SellkeBound) {
  const auto c = posthoc_calibration(0.05);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(c->L, 0.4072, 5e-5);
  EXPECT_NEAR(c->alpha_post, 0.289, 5e-4);
  EXPECT_NEAR(c->alpha_post + c->beta_post, 1.0, 1e-15);
  const auto edge = posthoc_calibration(std::exp(-1.0) * (1 - 1e-9));
  ASSERT_TRUE(edge.has_value());
  EXPECT_NEAR(edge->L, 1.0, 1e-6);
  EXPECT_NEAR(edge->alpha_post, 0.5, 1e-6);
  EXPECT_LT(posthoc_calibration(1e-12)->alpha_post, 1e-9);
  EXPECT_FALSE(posthoc_calibration(0.5).has_value());
  EXPECT_FALSE(posthoc_calibration(0.0).has_value());
}

TEST(StatisticKind, NamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(StatisticKind::fisher); ++i) {
    const auto kind = static_cast<StatisticKind>(i);
    EXPECT_EQ(statistic_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_FALSE(statistic_kind_from_string("nope").has_value());
}

TEST(G2Sensitivity, RatioToChi2ForSmallEffects) {
  // As the effect vanishes G^2 and chi^2 agree to second order.
  for (Count shift : {8, 4, 2, 1}) {
    const auto t = ContingencyTable::from_rows({{250 + shift, 250 - shift}, {250 - shift, 250 + shift}});
    const double ratio = g2_positive(t, Target::predicted_positive).value /
                         chi2_positive(t, Target::predicted_positive).value;
    EXPECT_NEAR(ratio, 1.0, 0.01);
  }
}

}  // namespace
}  // namespace bookmaker

