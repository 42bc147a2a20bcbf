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

#ifndef BOOKMAKER_CONTINGENCY_HPP_
#define BOOKMAKER_CONTINGENCY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bookmaker {

using Count = std::int64_t;

// K x K table of counts. Rows are predicted labels, columns are real
// classes; the same ordered label set indexes both axes.
//
//            +R   -R
//      +P    A    B    A+B
//      -P    C    D    C+D
//           A+C  B+D    N
class ContingencyTable {
 public:
  // `counts` is row-major with k*k entries. Empty `labels` yields "0".."k-1".
  ContingencyTable(std::size_t k, std::vector<Count> counts,
                   std::vector<std::string> labels = {});

  static ContingencyTable from_rows(const std::vector<std::vector<Count>>& rows,
                                    std::vector<std::string> labels = {});

  std::size_t k() const { return k_; }
  Count n() const { return n_; }
  Count operator()(std::size_t row, std::size_t col) const { return counts_[row * k_ + col]; }
  std::span<const Count> cells() const { return counts_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Count row_sum(std::size_t row) const;
  Count col_sum(std::size_t col) const;
  std::vector<Count> row_sums() const;
  std::vector<Count> col_sums() const;

  // Copy with every cell multiplied by `factor`.
  ContingencyTable scaled(Count factor) const;

  bool operator==(const ContingencyTable&) const = default;

 private:
  std::size_t k_;
  std::vector<Count> counts_;
  std::vector<std::string> labels_;
  Count n_;
};

// Probabilities relative to n. Never the source of truth; always derived
// from a ContingencyTable.
struct NormalizedTable {
  std::size_t k = 0;
  std::vector<double> probs;  // row-major

  double operator()(std::size_t row, std::size_t col) const { return probs[row * k + col]; }
};

struct Margins {
  std::vector<double> prevalence;  // column sums / n, Prev(c)
  std::vector<double> bias;        // row sums / n, Bias(l)
};

// Skew cs = rn / rp, cost ratio cv = cn / cp, combined c = cv * cs.
struct CostModel {
  double skew = 1.0;
  double cost_ratio = 1.0;

  double combined() const { return cost_ratio * skew; }

  // Skew taken from the real-class margins of a 2x2 table.
  static CostModel from_table(const ContingencyTable& t, double cost_ratio = 1.0);
  static CostModel insensitive() { return CostModel{1.0, 1.0}; }
};

struct LabelPair {
  std::string predicted;
  std::string actual;
};

// Tallies (predicted, actual) pairs. Labels are the sorted union of both
// columns unless `label_order` is given, in which case it fixes the index
// order and must cover every label that occurs.
ContingencyTable from_pairs(std::span<const LabelPair> pairs,
                            const std::optional<std::vector<std::string>>& label_order = std::nullopt);

NormalizedTable normalize(const ContingencyTable& t);
Margins margins(const ContingencyTable& t);

// One-vs-rest 2x2 collapse around `label_index`.
ContingencyTable dichotomize(const ContingencyTable& t, std::size_t label_index);

enum class Transform {
  inverse,        // reverse row and column order together
  dual,           // transpose: predictor and condition swap roles
  perverse_rows,  // reverse prediction order only
  perverse_cols,  // reverse class order only
};

ContingencyTable transform(const ContingencyTable& t, Transform kind);

// General relabelling: new row i is old row row_order[i], new column j is
// old column col_order[j]. Labels stay attached to index positions.
ContingencyTable permute(const ContingencyTable& t, std::span<const std::size_t> row_order,
                         std::span<const std::size_t> col_order);

struct ExpectationDelta {
  std::size_t k = 0;
  std::vector<double> expected;  // etp[i][j] = bias[i] * prevalence[j]
  std::vector<double> delta;     // probs - expected
  double det = 0.0;              // determinant of the normalized table

  double expected_at(std::size_t row, std::size_t col) const { return expected[row * k + col]; }
  double delta_at(std::size_t row, std::size_t col) const { return delta[row * k + col]; }
};

ExpectationDelta expectation_delta(const NormalizedTable& nt);

double determinant(const NormalizedTable& nt);

// Puts a 1 at (i, i) for every zero row i paired with zero column i. A
// remaining zero row gets its 1 in the lowest-index column with a nonzero
// margin, and symmetrically for zero columns.
ContingencyTable repair_zero_margins(const ContingencyTable& t);

bool has_zero_margin(const ContingencyTable& t);

// Throws DataError naming the first empty row or column.
void require_nonzero_margins(const ContingencyTable& t);

enum class MarginPolicy { reject, repair };

ContingencyTable apply_margin_policy(const ContingencyTable& t, MarginPolicy policy);

}  // namespace bookmaker

#endif  // BOOKMAKER_CONTINGENCY_HPP_
