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

#include "bookmaker/contingency.hpp"

#include <random>

#include <gtest/gtest.h>

#include "bookmaker/error.hpp"
#include "oracle.hpp"

namespace bookmaker {
namespace {

ContingencyTable table1() { return ContingencyTable::from_rows({{56, 20}, {12, 12}}); }

TEST(ContingencyTable, RejectsMalformedInput) {
  EXPECT_THROW(ContingencyTable(1, {5}), DataError);
  EXPECT_THROW(ContingencyTable(2, {1, 2, 3}), DataError);
  EXPECT_THROW(ContingencyTable(2, {1, -2, 3, 4}), DataError);
  EXPECT_THROW(ContingencyTable(2, {1, 2, 3, 4}, {"a", "a"}), DataError);
  EXPECT_THROW(ContingencyTable::from_rows({{1, 2}, {3}}), DataError);
}

TEST(ContingencyTable, SumsAndDefaultLabels) {
  const auto t = table1();
  EXPECT_EQ(t.n(), 100);
  EXPECT_EQ(t.row_sum(0), 76);
  EXPECT_EQ(t.col_sum(0), 68);
  EXPECT_EQ(t.labels(), (std::vector<std::string>{"0", "1"}));
}

TEST(FromPairs, MatchesMapTally) {
  std::mt19937_64 gen(11);
  const std::vector<std::string> names{"cat", "dog", "emu", "ant"};
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::vector<std::pair<std::string, std::string>> raw;
  std::vector<LabelPair> pairs;
  for (int i = 0; i < 500; ++i) {
    raw.emplace_back(names[pick(gen)], names[pick(gen)]);
    pairs.push_back({raw.back().first, raw.back().second});
  }
  std::vector<std::string> labels;
  const auto expected = oracle::tally(raw, labels);
  const auto t = from_pairs(pairs);
  EXPECT_EQ(t.labels(), labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) EXPECT_EQ(t(i, j), expected[i][j]);
  }
  EXPECT_EQ(t.n(), 500);
}

TEST(FromPairs, LabelOrderOverride) {
  std::vector<LabelPair> pairs{{"pos", "pos"}, {"pos", "neg"}, {"neg", "neg"}};
  const auto t = from_pairs(pairs, std::vector<std::string>{"pos", "neg"});
  EXPECT_EQ(t(0, 0), 1);
  EXPECT_EQ(t(0, 1), 1);
  EXPECT_EQ(t(1, 1), 1);
  EXPECT_THROW(from_pairs(pairs, std::vector<std::string>{"pos", "other"}), DataError);
}

TEST(FromPairs, Errors) {
  EXPECT_THROW(from_pairs({}), DataError);
  std::vector<LabelPair> single{{"a", "a"}, {"a", "a"}};
  EXPECT_THROW(from_pairs(single), DataError);
}

TEST(Normalize, SumsToOneAndMarginsMatch) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = oracle::random_kxk(gen, 4);
    const auto nt = normalize(t);
    double s = 0;
    for (double p : nt.probs) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
    const auto m = margins(t);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(m.bias[i], static_cast<double>(t.row_sum(i)) / static_cast<double>(t.n()), 1e-15);
      EXPECT_NEAR(m.prevalence[i], static_cast<double>(t.col_sum(i)) / static_cast<double>(t.n()), 1e-15);
    }
  }
  EXPECT_THROW(normalize(ContingencyTable(2, {0, 0, 0, 0})), DataError);
}

TEST(Dichotomize, CollapsesOneVsRest) {
  const auto t = ContingencyTable::from_rows({{5, 1, 2}, {3, 7, 1}, {0, 2, 9}}, {"a", "b", "c"});
  const auto d = dichotomize(t, 1);
  EXPECT_EQ(d(0, 0), 7);
  EXPECT_EQ(d(0, 1), 3 + 1);
  EXPECT_EQ(d(1, 0), 1 + 2);
  EXPECT_EQ(d(1, 1), 5 + 2 + 0 + 9);
  EXPECT_EQ(d.labels()[0], "b");
  EXPECT_EQ(d.n(), t.n());
  EXPECT_THROW(dichotomize(t, 3), UsageError);
}

TEST(Transform, InverseTwiceIsIdentity) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 20; ++i) {
    const auto t = oracle::random_kxk(gen, 3);
    EXPECT_EQ(transform(transform(t, Transform::inverse), Transform::inverse), t);
    EXPECT_EQ(transform(transform(t, Transform::dual), Transform::dual), t);
  }
}

TEST(Transform, DualIsTranspose) {
  const auto t = table1();
  const auto d = transform(t, Transform::dual);
  EXPECT_EQ(d(0, 1), 12);
  EXPECT_EQ(d(1, 0), 20);
}

TEST(ExpectationDelta, Table1) {
  const auto ed = expectation_delta(normalize(table1()));
  EXPECT_NEAR(ed.expected_at(0, 0), 0.76 * 0.68, 1e-15);
  EXPECT_NEAR(ed.delta_at(0, 0), 0.56 - 0.5168, 1e-15);
  EXPECT_NEAR(ed.det, 0.0432, 1e-15);
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937_64 gen(9);
  for (std::size_t k = 2; k <= 5; ++k) {
    for (int i = 0; i < 20; ++i) {
      const auto t = oracle::random_kxk(gen, k);
      const auto nt = normalize(t);
      std::vector<std::vector<double>> m(k, std::vector<double>(k));
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) m[r][c] = nt(r, c);
      }
      EXPECT_NEAR(determinant(nt), oracle::determinant(m), 1e-15);
    }
  }
}

TEST(RepairZeroMargins, PairedAndUnpaired) {
  // Row 2 and column 2 empty together: paired repair at (2, 2).
  const auto paired = ContingencyTable::from_rows({{3, 1, 0}, {2, 4, 0}, {0, 0, 0}});
  const auto fixed = repair_zero_margins(paired);
  EXPECT_EQ(fixed(2, 2), 1);
  EXPECT_FALSE(has_zero_margin(fixed));

  // Row 1 empty but column 1 is not: 1 goes to the first nonzero column.
  const auto unpaired = ContingencyTable::from_rows({{3, 2}, {0, 0}});
  const auto fixed2 = repair_zero_margins(unpaired);
  EXPECT_EQ(fixed2(1, 0), 1);
  EXPECT_FALSE(has_zero_margin(fixed2));
  EXPECT_EQ(fixed2.n(), 6);
}

TEST(RequireNonzeroMargins, NamesTheMargin) {
  const auto t = ContingencyTable::from_rows({{3, 0}, {2, 0}}, {"yes", "no"});
  try {
    require_nonzero_margins(t);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("no"), std::string::npos);
  }
  EXPECT_THROW(apply_margin_policy(t, MarginPolicy::reject), DataError);
  EXPECT_FALSE(has_zero_margin(apply_margin_policy(t, MarginPolicy::repair)));
}

TEST(Permute, RelabelsConsistently) {
  const auto t = ContingencyTable::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, {"a", "b", "c"});
  const std::vector<std::size_t> order{2, 0, 1};
  const auto p = permute(t, order, order);
  EXPECT_EQ(p(0, 0), 9);
  EXPECT_EQ(p(0, 1), 7);
  EXPECT_EQ(p(1, 2), 2);
  EXPECT_EQ(p.n(), t.n());
}

}  // namespace
}  // namespace bookmaker
