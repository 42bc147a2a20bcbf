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

#ifndef BOOKMAKER_TABLE_IO_HPP_
#define BOOKMAKER_TABLE_IO_HPP_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "bookmaker/contingency.hpp"

namespace bookmaker {

// Table file: K rows of K non-negative integers separated by commas or tabs.
// A header row of labels and/or a leading label column are detected when
// the first cell of that row or column is not a number. `source` only
// decorates error messages.
ContingencyTable read_table(std::istream& in, const std::string& source = "<table>");
ContingencyTable read_table_file(const std::filesystem::path& path);

// Pairs file: two columns (predicted, actual). Lines starting with '#' are
// comments. A first line of the form "predicted,actual" (or pred/gold,
// prediction/real, ...) is taken as a header.
std::vector<LabelPair> read_pairs(std::istream& in, const std::string& source = "<pairs>");
std::vector<LabelPair> read_pairs_file(const std::filesystem::path& path);

// Reorders rows and columns of `t` so its labels follow `order`. When the
// table carries default index labels, `order` just renames them.
ContingencyTable relabel(const ContingencyTable& t, const std::vector<std::string>& order);

std::vector<std::string> split_label_list(const std::string& csv);

}  // namespace bookmaker

#endif  // BOOKMAKER_TABLE_IO_HPP_
