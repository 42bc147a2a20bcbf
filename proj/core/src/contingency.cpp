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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "bookmaker/error.hpp"

namespace bookmaker {
namespace {

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

ContingencyTable::ContingencyTable(std::size_t k, std::vector<Count> counts,
                                   std::vector<std::string> labels)
    : k_(k), counts_(std::move(counts)), labels_(std::move(labels)), n_(0) {
  if (k_ < 2) throw DataError(fmt::format("contingency table needs at least 2 labels, got {}", k_));
  if (counts_.size() != k_ * k_) {
    throw DataError(fmt::format("expected {} cells for a {}x{} table, got {}", k_ * k_, k_, k_,
                                counts_.size()));
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) {
      throw DataError(fmt::format("negative count {} at row {}, column {}", counts_[i], i / k_,
                                  i % k_));
    }
    n_ += counts_[i];
  }
  if (labels_.empty()) labels_ = default_labels(k_);
  if (labels_.size() != k_) {
    throw DataError(fmt::format("expected {} labels, got {}", k_, labels_.size()));
  }
  std::set<std::string> distinct(labels_.begin(), labels_.end());
  if (distinct.size() != labels_.size()) throw DataError("labels must be distinct");
}

ContingencyTable ContingencyTable::from_rows(const std::vector<std::vector<Count>>& rows,
                                             std::vector<std::string> labels) {
  const std::size_t k = rows.size();
  std::vector<Count> counts;
  counts.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != k) {
      throw DataError(fmt::format("row {} has {} cells, expected {}", i, rows[i].size(), k));
    }
    counts.insert(counts.end(), rows[i].begin(), rows[i].end());
  }
  return ContingencyTable(k, std::move(counts), std::move(labels));
}

Count ContingencyTable::row_sum(std::size_t row) const {
  Count s = 0;
  for (std::size_t j = 0; j < k_; ++j) s += (*this)(row, j);
  return s;
}

Count ContingencyTable::col_sum(std::size_t col) const {
  Count s = 0;
  for (std::size_t i = 0; i < k_; ++i) s += (*this)(i, col);
  return s;
}

std::vector<Count> ContingencyTable::row_sums() const {
  std::vector<Count> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = row_sum(i);
  return out;
}

std::vector<Count> ContingencyTable::col_sums() const {
  std::vector<Count> out(k_);
  for (std::size_t j = 0; j < k_; ++j) out[j] = col_sum(j);
  return out;
}

ContingencyTable ContingencyTable::scaled(Count factor) const {
  if (factor < 0) throw UsageError("scale factor must be non-negative");
  std::vector<Count> counts = counts_;
  for (auto& c : counts) c *= factor;
  return ContingencyTable(k_, std::move(counts), labels_);
}

CostModel CostModel::from_table(const ContingencyTable& t, double cost_ratio) {
  const Count positives = t.col_sum(0);
  if (positives == 0 || positives == t.n()) {
    throw DataError("skew is undefined when one real class is empty");
  }
  if (!(cost_ratio > 0.0)) throw UsageError("cost ratio must be positive");
  return CostModel{static_cast<double>(t.n() - positives) / static_cast<double>(positives),
                   cost_ratio};
}

ContingencyTable from_pairs(std::span<const LabelPair> pairs,
                            const std::optional<std::vector<std::string>>& label_order) {
  if (pairs.empty()) throw DataError("no (predicted, actual) pairs to tally");

  std::vector<std::string> labels;
  if (label_order) {
    labels = *label_order;
  } else {
    std::set<std::string> seen;
    for (const auto& p : pairs) {
      seen.insert(p.predicted);
      seen.insert(p.actual);
    }
    labels.assign(seen.begin(), seen.end());
  }

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  if (index.size() != labels.size()) throw DataError("label order contains duplicates");
  if (labels.size() < 2) {
    throw DataError(fmt::format("pairs use only {} distinct label(s); need at least 2",
                                labels.size()));
  }

  const std::size_t k = labels.size();
  std::vector<Count> counts(k * k, 0);
  for (std::size_t line = 0; line < pairs.size(); ++line) {
    const auto p = index.find(pairs[line].predicted);
    const auto a = index.find(pairs[line].actual);
    if (p == index.end() || a == index.end()) {
      throw DataError(fmt::format("pair {} uses label '{}' missing from the label order", line + 1,
                                  p == index.end() ? pairs[line].predicted : pairs[line].actual));
    }
    ++counts[p->second * k + a->second];
  }
  return ContingencyTable(k, std::move(counts), std::move(labels));
}

NormalizedTable normalize(const ContingencyTable& t) {
  if (t.n() == 0) throw DataError("cannot normalize an empty table (n = 0)");
  NormalizedTable nt{t.k(), std::vector<double>(t.cells().size())};
  const double n = static_cast<double>(t.n());
  for (std::size_t i = 0; i < nt.probs.size(); ++i) {
    nt.probs[i] = static_cast<double>(t.cells()[i]) / n;
  }
  return nt;
}

Margins margins(const ContingencyTable& t) {
  if (t.n() == 0) throw DataError("margins are undefined for an empty table (n = 0)");
  const double n = static_cast<double>(t.n());
  Margins m;
  m.prevalence.resize(t.k());
  m.bias.resize(t.k());
  for (std::size_t i = 0; i < t.k(); ++i) {
    m.prevalence[i] = static_cast<double>(t.col_sum(i)) / n;
    m.bias[i] = static_cast<double>(t.row_sum(i)) / n;
  }
  return m;
}

ContingencyTable dichotomize(const ContingencyTable& t, std::size_t label_index) {
  if (label_index >= t.k()) {
    throw UsageError(fmt::format("label index {} out of range for K = {}", label_index, t.k()));
  }
  const Count tp = t(label_index, label_index);
  const Count fp = t.row_sum(label_index) - tp;
  const Count fn = t.col_sum(label_index) - tp;
  const Count tn = t.n() - tp - fp - fn;
  std::vector<std::string> labels = {t.labels()[label_index],
                                     t.k() == 2 ? t.labels()[1 - label_index]
                                                : "not " + t.labels()[label_index]};
  return ContingencyTable(2, {tp, fp, fn, tn}, std::move(labels));
}

ContingencyTable permute(const ContingencyTable& t, std::span<const std::size_t> row_order,
                         std::span<const std::size_t> col_order) {
  const std::size_t k = t.k();
  auto check = [k](std::span<const std::size_t> order, const char* what) {
    if (order.size() != k) throw UsageError(fmt::format("{} permutation must have {} entries", what, k));
    std::vector<bool> used(k, false);
    for (auto idx : order) {
      if (idx >= k || used[idx]) throw UsageError(fmt::format("{} order is not a permutation", what));
      used[idx] = true;
    }
  };
  check(row_order, "row");
  check(col_order, "column");

  std::vector<Count> counts(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) counts[i * k + j] = t(row_order[i], col_order[j]);
  }
  return ContingencyTable(k, std::move(counts), t.labels());
}

ContingencyTable transform(const ContingencyTable& t, Transform kind) {
  const std::size_t k = t.k();
  std::vector<std::size_t> identity(k), reversed(k);
  std::iota(identity.begin(), identity.end(), 0);
  std::iota(reversed.rbegin(), reversed.rend(), 0);

  switch (kind) {
    case Transform::inverse: {
      // Both axes move together, so each label keeps its counts.
      ContingencyTable moved = permute(t, reversed, reversed);
      std::vector<std::string> labels(t.labels().rbegin(), t.labels().rend());
      return ContingencyTable(k, {moved.cells().begin(), moved.cells().end()}, std::move(labels));
    }
    case Transform::dual: {
      std::vector<Count> counts(k * k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) counts[i * k + j] = t(j, i);
      }
      return ContingencyTable(k, std::move(counts), t.labels());
    }
    case Transform::perverse_rows:
      return permute(t, reversed, identity);
    case Transform::perverse_cols:
      return permute(t, identity, reversed);
  }
  throw UsageError("unknown transform");
}

double determinant(const NormalizedTable& nt) {
  const auto k = static_cast<Eigen::Index>(nt.k);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      nt.probs.data(), k, k);
  if (k == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m.partialPivLu().determinant();
}

ExpectationDelta expectation_delta(const NormalizedTable& nt) {
  const std::size_t k = nt.k;
  std::vector<double> bias(k, 0.0), prevalence(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      bias[i] += nt(i, j);
      prevalence[j] += nt(i, j);
    }
  }
  ExpectationDelta out{k, std::vector<double>(k * k), std::vector<double>(k * k), 0.0};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.expected[i * k + j] = bias[i] * prevalence[j];
      out.delta[i * k + j] = nt(i, j) - out.expected[i * k + j];
    }
  }
  out.det = determinant(nt);
  return out;
}

bool has_zero_margin(const ContingencyTable& t) {
  for (std::size_t i = 0; i < t.k(); ++i) {
    if (t.row_sum(i) == 0 || t.col_sum(i) == 0) return true;
  }
  return false;
}

void require_nonzero_margins(const ContingencyTable& t) {
  for (std::size_t i = 0; i < t.k(); ++i) {
    if (t.row_sum(i) == 0) {
      throw DataError(fmt::format(
          "zero margin: predicted label '{}' (row {}) is never predicted; use repair mode to patch it",
          t.labels()[i], i));
    }
  }
  for (std::size_t j = 0; j < t.k(); ++j) {
    if (t.col_sum(j) == 0) {
      throw DataError(fmt::format(
          "zero margin: real class '{}' (column {}) never occurs; use repair mode to patch it",
          t.labels()[j], j));
    }
  }
}

ContingencyTable repair_zero_margins(const ContingencyTable& t) {
  const std::size_t k = t.k();
  const auto rows = t.row_sums();
  const auto cols = t.col_sums();
  std::vector<Count> counts(t.cells().begin(), t.cells().end());

  std::vector<std::size_t> lone_rows, lone_cols;
  for (std::size_t i = 0; i < k; ++i) {
    const bool zero_row = rows[i] == 0;
    const bool zero_col = cols[i] == 0;
    if (zero_row && zero_col) {
      counts[i * k + i] = 1;
    } else if (zero_row) {
      lone_rows.push_back(i);
    } else if (zero_col) {
      lone_cols.push_back(i);
    }
  }

  auto first_nonzero = [k](const std::vector<Count>& sums) -> std::size_t {
    for (std::size_t i = 0; i < k; ++i) {
      if (sums[i] > 0) return i;
    }
    return 0;
  };
  for (auto i : lone_rows) counts[i * k + first_nonzero(cols)] += 1;
  for (auto j : lone_cols) counts[first_nonzero(rows) * k + j] += 1;

  return ContingencyTable(k, std::move(counts), t.labels());
}

ContingencyTable apply_margin_policy(const ContingencyTable& t, MarginPolicy policy) {
  if (policy == MarginPolicy::repair) return repair_zero_margins(t);
  require_nonzero_margins(t);
  return t;
}

}  // namespace bookmaker
