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

#include "bookmaker/table_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "bookmaker/error.hpp"

namespace bookmaker {
namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(begin, end - begin + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  const char sep = line.find('\t') != std::string::npos ? '\t' : ',';
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    fields.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

Count parse_count(const std::string& s, const std::string& source, std::size_t line) {
  Count value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(fmt::format("{}:{}: '{}' is not an integer count", source, line, s));
  }
  if (value < 0) throw DataError(fmt::format("{}:{}: negative count {}", source, line, value));
  return value;
}

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;
    lines.push_back({number, split_fields(raw)});
  }
  return lines;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

ContingencyTable read_table(std::istream& in, const std::string& source) {
  auto lines = read_lines(in);
  if (lines.empty()) throw DataError(fmt::format("{}: no table rows", source));

  std::vector<std::string> header_labels;
  const auto& first = lines.front().fields;
  const bool header = std::any_of(first.begin() + 1, first.end(),
                                  [](const std::string& f) { return !is_number(f); }) ||
                      (first.size() == 1 && !is_number(first[0]));
  if (header) {
    header_labels = first;
    lines.erase(lines.begin());
  }
  if (lines.empty()) throw DataError(fmt::format("{}: header but no table rows", source));

  const bool label_column = !is_number(lines.front().fields.front());
  const std::size_t k = lines.size();
  std::vector<std::string> row_labels;
  std::vector<Count> counts;
  counts.reserve(k * k);
  for (const auto& line : lines) {
    const std::size_t offset = label_column ? 1 : 0;
    if (line.fields.size() != k + offset) {
      throw DataError(fmt::format("{}:{}: expected {} counts in a {}x{} table, found {}", source,
                                  line.number, k, k, k, line.fields.size() - offset));
    }
    if (label_column) row_labels.push_back(line.fields.front());
    for (std::size_t j = offset; j < line.fields.size(); ++j) {
      counts.push_back(parse_count(line.fields[j], source, line.number));
    }
  }

  std::vector<std::string> labels;
  if (header) {
    // A corner cell precedes the column labels when a label column exists.
    if (header_labels.size() == k + 1) header_labels.erase(header_labels.begin());
    if (header_labels.size() != k) {
      throw DataError(fmt::format("{}:{}: header has {} labels for a {}x{} table", source,
                                  lines.front().number - 1, header_labels.size(), k, k));
    }
    labels = header_labels;
    if (label_column && row_labels != header_labels) {
      throw DataError(fmt::format(
          "{}: row labels must match column labels in the same order (rows are predictions, "
          "columns are real classes)",
          source));
    }
  } else if (label_column) {
    labels = row_labels;
  }
  return ContingencyTable(k, std::move(counts), std::move(labels));
}

ContingencyTable read_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open table file '{}'", path.string()));
  return read_table(in, path.string());
}

std::vector<LabelPair> read_pairs(std::istream& in, const std::string& source) {
  auto lines = read_lines(in);
  if (!lines.empty() && lines.front().fields.size() == 2) {
    static const std::vector<std::string> predicted_names = {"predicted", "prediction", "pred",
                                                             "predicted_label", "label"};
    static const std::vector<std::string> actual_names = {"actual", "real", "gold", "truth",
                                                          "actual_label", "class", "reference"};
    const auto p = lower(lines.front().fields[0]);
    const auto a = lower(lines.front().fields[1]);
    if (std::find(predicted_names.begin(), predicted_names.end(), p) != predicted_names.end() &&
        std::find(actual_names.begin(), actual_names.end(), a) != actual_names.end()) {
      lines.erase(lines.begin());
    }
  }
  std::vector<LabelPair> pairs;
  pairs.reserve(lines.size());
  for (const auto& line : lines) {
    if (line.fields.size() != 2 || line.fields[0].empty() || line.fields[1].empty()) {
      throw DataError(fmt::format("{}:{}: expected two columns (predicted, actual)", source,
                                  line.number));
    }
    pairs.push_back({line.fields[0], line.fields[1]});
  }
  return pairs;
}

std::vector<LabelPair> read_pairs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open pairs file '{}'", path.string()));
  return read_pairs(in, path.string());
}

ContingencyTable relabel(const ContingencyTable& t, const std::vector<std::string>& order) {
  if (order.size() != t.k()) {
    throw UsageError(fmt::format("label order has {} entries for a table with K = {}", order.size(),
                                 t.k()));
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < t.k(); ++i) index.emplace(t.labels()[i], i);

  const bool all_present = std::all_of(order.begin(), order.end(),
                                       [&](const std::string& l) { return index.count(l) > 0; });
  if (!all_present) {
    // Table has no matching labels: treat `order` as names for the index positions.
    return ContingencyTable(t.k(), {t.cells().begin(), t.cells().end()}, order);
  }
  std::vector<std::size_t> perm;
  perm.reserve(order.size());
  for (const auto& l : order) perm.push_back(index.at(l));
  auto moved = permute(t, perm, perm);
  return ContingencyTable(t.k(), {moved.cells().begin(), moved.cells().end()}, order);
}

std::vector<std::string> split_label_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace bookmaker
