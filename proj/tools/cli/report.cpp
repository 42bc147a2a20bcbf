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

#include "report.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

namespace bookmaker::cli {
namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

// Keys shown under a conventional symbol in text mode.
std::string display_name(const std::string& key) {
  if (key == "informedness") return "B";
  if (key == "markedness") return "M";
  if (key == "correlation") return "C";
  return key;
}

// Metrics that are not probabilities and never take --percent.
bool percent_eligible(const std::string& key) {
  static const std::set<std::string> plain = {
      "lr",   "nlr", "skew", "mutual_information", "mutual_information_bits", "conditional_entropy",
      "conditional_entropy_bits", "exponent", "det", "dtp", "roc_distance_sq"};
  return plain.count(key) == 0;
}

std::string format_value(const json& v, bool percent) {
  if (v.is_null()) return "n/a";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) {
    const double d = v.get<double>();
    return percent ? fmt::format("{:.2f}%", d * 100.0) : fmt::format("{:.4f}", d);
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_tree(std::ostream& out, const json& node, int indent, bool percent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : node.items()) {
    if (value.is_object()) {
      out << pad << key << "\n";
      render_tree(out, value, indent + 2, percent);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << pad << key << "\n";
      for (const auto& item : value) {
        render_tree(out, item, indent + 2, percent);
        out << "\n";
      }
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ", ";
        joined += format_value(item, percent && percent_eligible(key));
      }
      out << fmt::format("{}{:<26}{}\n", pad, display_name(key), joined);
    } else {
      out << fmt::format("{}{:<26}{}\n", pad, display_name(key), format_value(value, percent && percent_eligible(key)));
    }
  }
}

void render_table(std::ostream& out, const json& table) {
  out << fmt::format("table: K = {}, N = {} (rows predicted, columns real)\n", table["k"].get<int>(),
                     table["n"].get<long long>());
  std::size_t width = 6;
  for (const auto& l : table["labels"]) width = std::max(width, l.get<std::string>().size() + 2);
  out << fmt::format("  {:>{}}", "", width);
  for (const auto& l : table["labels"]) out << fmt::format("{:>{}}", l.get<std::string>(), width);
  out << "\n";
  for (std::size_t i = 0; i < table["counts"].size(); ++i) {
    out << fmt::format("  {:>{}}", table["labels"][i].get<std::string>(), width);
    for (const auto& c : table["counts"][i]) out << fmt::format("{:>{}}", c.get<long long>(), width);
    out << "\n";
  }
}

void render_significance(std::ostream& out, const json& list) {
  out << "significance\n";
  for (const auto& r : list) {
    std::string corrections;
    for (const auto& c : r["corrections"]) corrections += " +" + c.get<std::string>();
    const bool is_fisher = r["kind"] == "fisher";
    const std::string value = is_fisher ? "" : fmt::format("  value {:>10}  df {:>2}", format_value(r["value"], false),
                                                           r["df"].get<int>());
    out << fmt::format("  {:<11}{}  p {}  {} at {}{}\n", r["kind"].get<std::string>(), value,
                       format_value(r["p_value"], false),
                       r["significant"].get<bool>() ? "significant" : "not significant",
                       format_value(r["alpha"], false), corrections);
  }
}

void render_confidence(std::ostream& out, const json& list, bool percent) {
  out << "confidence\n";
  for (const auto& ci : list) {
    out << fmt::format("  {:<10} {:<20} center {}  +/- {}  [{}, {}]  X {}  E {}  n {}\n",
                       ci["variant"].get<std::string>(), ci["rule"].get<std::string>(),
                       format_value(ci["center"], percent), format_value(ci["half_width"], percent),
                       format_value(ci["lo"], percent), format_value(ci["hi"], percent), format_value(ci["x"], false),
                       format_value(ci["evenness"], false), ci["n"].dump());
  }
}

void render_text(std::ostream& out, const json& doc, bool percent) {
  out << fmt::format("{} {} {}\n", doc["tool"]["name"].get<std::string>(), doc["command"].get<std::string>(),
                     doc["tool"]["version"].get<std::string>());
  for (const auto& [key, value] : doc.items()) {
    if (key == "tool" || key == "command") continue;
    if (key == "table") {
      render_table(out, value);
    } else if (key == "significance") {
      render_significance(out, value);
    } else if (key == "confidence") {
      render_confidence(out, value, percent);
    } else if (value.is_object()) {
      out << key << "\n";
      render_tree(out, value, 2, percent && key == "metrics");
    } else {
      out << fmt::format("{}: {}\n", key, format_value(value, false));
    }
  }
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt::format("{:.12g}", v.get<double>());
  if (v.is_number()) return v.dump();
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void flatten(std::ostream& out, const std::string& section, const std::string& prefix, const json& node) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(out, section, prefix.empty() ? key : prefix + "." + key, value);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      flatten(out, section, fmt::format("{}{}{}", prefix, prefix.empty() ? "" : ".", i), node[i]);
    }
  } else {
    out << csv_field(section) << "," << csv_field(prefix) << "," << csv_field(node) << "\n";
  }
}

}  // namespace

json report_document(const std::string& command, const json& input) {
  json doc;
  doc["tool"] = {{"name", "bookmaker"}, {"version", kVersion}};
  doc["command"] = command;
  if (!input.is_null()) doc["input"] = input;
  return doc;
}

json table_json(const ContingencyTable& t) {
  json counts = json::array();
  for (std::size_t i = 0; i < t.k(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < t.k(); ++j) row.push_back(t(i, j));
    counts.push_back(row);
  }
  return {{"k", t.k()}, {"n", t.n()}, {"labels", t.labels()}, {"counts", counts}};
}

json binary_stats_json(const BinaryStats& s) {
  json j;
  j["informedness"] = number(s.informedness);
  j["markedness"] = number(s.markedness);
  j["correlation"] = number(s.correlation);
  j["kappa"] = number(s.kappa);
  j["recall"] = number(s.recall);
  j["inverse_recall"] = number(s.inverse_recall);
  j["precision"] = number(s.precision);
  j["inverse_precision"] = number(s.inverse_precision);
  j["fallout"] = number(s.fallout);
  j["miss_rate"] = number(s.miss_rate);
  j["f1"] = number(s.f1);
  j["inverse_f1"] = number(s.inverse_f1);
  j["g_measure"] = number(s.g_measure);
  j["jaccard"] = number(s.jaccard);
  j["accuracy"] = number(s.accuracy);
  j["auc"] = number(s.auc);
  j["wracc"] = number(s.wracc);
  j["lr"] = number(s.lr);
  j["nlr"] = number(s.nlr);
  j["roc_distance_sq"] = number(s.roc_distance_sq);
  j["prevalence"] = number(s.rp);
  j["bias"] = number(s.pp);
  j["skew"] = number(s.skew);
  j["evenness_r"] = number(s.evenness_r);
  j["evenness_p"] = number(s.evenness_p);
  j["evenness_g"] = number(s.evenness_g);
  j["dtp"] = number(s.dtp);
  return j;
}

json multiclass_stats_json(const MulticlassStats& s, const std::vector<std::string>& labels) {
  json j;
  j["informedness"] = number(s.informedness);
  j["markedness"] = number(s.markedness);
  j["correlation"] = optional_number(s.correlation);
  j["kappa"] = number(s.kappa);
  j["mutual_information"] = number(s.mutual_information);
  j["mutual_information_bits"] = number(s.mutual_information / std::log(2.0));
  j["conditional_entropy"] = number(s.conditional_entropy);
  j["conditional_entropy_bits"] = number(s.conditional_entropy / std::log(2.0));
  j["det"] = number(s.det);
  j["macro"] = {{"wav", number(s.macro.wav)}, {"gav", number(s.macro.gav)}, {"fav", number(s.macro.fav)}};
  const auto& e = s.evenness;
  j["evenness"] = {{"r_plus", number(e.r_plus)},   {"p_plus", number(e.p_plus)},   {"g_plus", number(e.g_plus)},
                   {"r_minus", number(e.r_minus)}, {"p_minus", number(e.p_minus)}, {"g_minus", number(e.g_minus)},
                   {"r_hash", number(e.r_hash)},   {"p_hash", number(e.p_hash)},   {"g_hash", number(e.g_hash)}};
  auto estimates = [](const DeterminantEstimates& d) {
    return json{{"exponent", number(d.exponent)},
                {"informedness", number(d.informedness)},
                {"markedness", number(d.markedness)},
                {"correlation", number(d.correlation)}};
  };
  j["det_estimates"] = {{"two_over_k", estimates(s.det_estimates)},
                        {"inverse_3k_minus_2", estimates(s.det_estimates_alt)}};
  json per_label = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    per_label.push_back({{"label", labels[i]},
                         {"informedness", number(s.label_informedness[i])},
                         {"markedness", number(s.class_markedness[i])}});
  }
  j["per_label"] = per_label;
  return j;
}

json significance_json(const SignificanceReport& r, double alpha) {
  json corrections = json::array();
  if (r.yates) corrections.push_back("yates");
  if (r.williams) corrections.push_back("williams");
  json j;
  j["kind"] = std::string(to_string(r.kind));
  j["value"] = number(r.value);
  j["df"] = r.df;
  j["df_alt"] = r.df_alt;
  j["p_value"] = number(r.p_value);
  j["p_value_alt"] = r.kind == StatisticKind::fisher ? json(nullptr) : number(chi2_sf(r.value, r.df_alt));
  j["corrections"] = corrections;
  j["n"] = r.n;
  j["alpha"] = alpha;
  j["significant"] = r.significant(alpha);
  if (auto c = posthoc_calibration(r.p_value)) {
    j["calibration"] = {{"L", number(c->L)}, {"alpha_post", number(c->alpha_post)}, {"beta_post", number(c->beta_post)}};
  } else {
    j["calibration"] = nullptr;
  }
  return j;
}

json confidence_json(const ConfidenceInterval& ci) {
  return {{"variant", std::string(to_string(ci.variant))},
          {"rule", std::string(to_string(ci.rule))},
          {"center", number(ci.center)},
          {"half_width", number(ci.half_width)},
          {"lo", number(ci.lo())},
          {"hi", number(ci.hi())},
          {"x", number(ci.x)},
          {"n", ci.n},
          {"evenness", number(ci.evenness)}};
}

void render(std::ostream& out, const json& doc, const RenderOptions& options) {
  switch (options.format) {
    case Format::json:
      out << doc.dump(2) << "\n";
      return;
    case Format::csv:
      out << "section,key,value\n";
      for (const auto& [key, value] : doc.items()) {
        if (value.is_structured()) {
          flatten(out, key, "", value);
        } else {
          flatten(out, "", key, value);
        }
      }
      return;
    case Format::text:
      render_text(out, doc, options.percent);
      return;
  }
}

}  // namespace bookmaker::cli
