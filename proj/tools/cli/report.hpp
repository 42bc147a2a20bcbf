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

#ifndef BOOKMAKER_TOOLS_CLI_REPORT_HPP_
#define BOOKMAKER_TOOLS_CLI_REPORT_HPP_

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "bookmaker/confidence.hpp"
#include "bookmaker/contingency.hpp"
#include "bookmaker/dichotomous.hpp"
#include "bookmaker/multiclass.hpp"
#include "bookmaker/significance.hpp"

namespace bookmaker::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Skeleton of every report: tool, command and input descriptor.
json report_document(const std::string& command, const json& input);

json table_json(const ContingencyTable& t);
json binary_stats_json(const BinaryStats& s);
json multiclass_stats_json(const MulticlassStats& s, const std::vector<std::string>& labels);
json significance_json(const SignificanceReport& r, double alpha);
json confidence_json(const ConfidenceInterval& ci);

enum class Format { text, json, csv };

struct RenderOptions {
  Format format = Format::text;
  bool percent = false;
};

// Text and CSV are both produced from the JSON document, so every printed
// number is the JSON value rounded for display.
void render(std::ostream& out, const json& doc, const RenderOptions& options);

}  // namespace bookmaker::cli

#endif  // BOOKMAKER_TOOLS_CLI_REPORT_HPP_
