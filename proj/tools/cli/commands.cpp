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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bookmaker/error.hpp"
#include "bookmaker/montecarlo.hpp"
#include "bookmaker/table_io.hpp"
#include "report.hpp"

namespace bookmaker::cli {
namespace {

struct InputOptions {
  std::string table;
  std::string pairs;
  std::string labels;
  bool repair = false;
};

struct OutputOptions {
  std::string format = "text";
  bool percent = false;
};

void add_input_options(CLI::App* app, InputOptions& in) {
  app->add_option("--table", in.table, "K x K count table (CSV/TSV, rows predicted, columns real)");
  app->add_option("--pairs", in.pairs, "two-column file of predicted,actual labels");
  app->add_option("--labels", in.labels, "comma-separated label order");
  app->add_flag("--repair-margins", in.repair, "add unit counts to empty rows/columns instead of failing");
}

void add_output_options(CLI::App* app, OutputOptions& out) {
  app->add_option("--format", out.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app->add_flag("--percent", out.percent, "show probabilities as percentages in text output");
}

RenderOptions render_options(const OutputOptions& o) {
  RenderOptions r;
  r.format = o.format == "json" ? Format::json : o.format == "csv" ? Format::csv : Format::text;
  r.percent = o.percent;
  return r;
}

struct Loaded {
  ContingencyTable table;
  json descriptor;
};

Loaded load_input(const InputOptions& in) {
  if (in.table.empty() == in.pairs.empty()) throw UsageError("give exactly one of --table FILE or --pairs FILE");
  std::optional<std::vector<std::string>> order;
  if (!in.labels.empty()) order = split_label_list(in.labels);

  json descriptor;
  std::optional<ContingencyTable> t;
  if (!in.table.empty()) {
    t = read_table_file(in.table);
    if (order) t = relabel(*t, *order);
    descriptor = {{"file", in.table}, {"format", "table"}};
  } else {
    const auto pairs = read_pairs_file(in.pairs);
    t = from_pairs(pairs, order);
    descriptor = {{"file", in.pairs}, {"format", "pairs"}};
  }
  descriptor["labels"] = t->labels();
  descriptor["repair_margins"] = in.repair;
  auto table = apply_margin_policy(*t, in.repair ? MarginPolicy::repair : MarginPolicy::reject);
  return {std::move(table), descriptor};
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

double multiplier(double x, const std::optional<double>& alpha, bool one_tailed) {
  if (alpha) return normal_multiplier(*alpha, !one_tailed);
  return x;
}

// evaluate --------------------------------------------------------------

struct EvaluateArgs {
  InputOptions in;
  OutputOptions out;
};

void evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto loaded = load_input(a.in);
  const auto& t = loaded.table;
  auto doc = report_document("evaluate", loaded.descriptor);
  doc["table"] = table_json(t);
  json metrics;
  if (t.k() == 2) metrics["dichotomous"] = binary_stats_json(binary_stats(t));
  metrics["multiclass"] = multiclass_stats_json(multiclass_stats(t), t.labels());
  doc["metrics"] = metrics;
  render(out, doc, render_options(a.out));
}

// significance ----------------------------------------------------------

struct SignificanceArgs {
  InputOptions in;
  OutputOptions out;
  std::vector<std::string> families{"all"};
  bool yates = false;
  bool williams = false;
  double alpha = 0.05;
  std::size_t fisher_samples = 100000;
  std::optional<std::uint64_t> seed;
};

bool wants(const std::vector<std::string>& families, const std::string& name) {
  return std::find(families.begin(), families.end(), name) != families.end() ||
         std::find(families.begin(), families.end(), "all") != families.end();
}

void significance(const SignificanceArgs& a, std::ostream& out) {
  const auto loaded = load_input(a.in);
  const auto& t = loaded.table;
  auto doc = report_document("significance", loaded.descriptor);
  doc["table"] = table_json(t);

  std::vector<SignificanceReport> reports;
  if (t.k() == 2 && wants(a.families, "positive")) {
    for (auto target : {Target::predicted_positive, Target::real_positive}) {
      reports.push_back(chi2_positive(t, target, a.yates));
      auto g = g2_positive(t, target);
      reports.push_back(a.williams ? williams_correction(g, t, WilliamsMode::goodness_of_fit) : g);
    }
  }
  const std::vector<std::pair<std::string, std::vector<StatisticKind>>> bookmaker = {
      {"kb", {StatisticKind::KB}},
      {"km", {StatisticKind::KM}},
      {"kbm", {StatisticKind::KBM}},
      {"x", {StatisticKind::XB, StatisticKind::XM, StatisticKind::XBM}},
      {"conv", {StatisticKind::convB, StatisticKind::convM, StatisticKind::convBM}},
  };
  for (const auto& [family, kinds] : bookmaker) {
    if (!wants(a.families, family)) continue;
    for (auto kind : kinds) reports.push_back(chi2_bookmaker_family(t, kind));
  }
  if (wants(a.families, "full")) {
    auto full = full_table_tests(t, a.yates);
    reports.push_back(full.chi2);
    reports.push_back(a.williams ? williams_correction(full.g2, t, WilliamsMode::independence) : full.g2);
  }
  if (wants(a.families, "fisher")) {
    if (t.k() > 2) {
      const std::uint64_t seed = a.seed.value_or(fresh_seed());
      doc["seed"] = seed;
      doc["fisher_samples"] = a.fisher_samples;
      reports.push_back(fisher_report(t, a.fisher_samples, seed));
    } else {
      reports.push_back(fisher_report(t));
    }
  }
  json list = json::array();
  for (const auto& r : reports) list.push_back(significance_json(r, a.alpha));
  doc["significance"] = list;
  render(out, doc, render_options(a.out));
}

// confidence ------------------------------------------------------------

struct ConfidenceArgs {
  InputOptions in;
  OutputOptions out;
  std::optional<double> b;
  std::optional<Count> n;
  double evenness = 1.0;
  double x = kTwoTailed95;
  std::optional<double> alpha;
  bool one_tailed = false;
  std::string rule;
};

void confidence(const ConfidenceArgs& a, std::ostream& out) {
  const bool from_file = !a.in.table.empty() || !a.in.pairs.empty();
  double b = 0.0, e = a.evenness;
  Count n = 0;
  json doc;
  if (from_file) {
    if (a.b || a.n) throw UsageError("use either an input file or --b/--n, not both");
    const auto loaded = load_input(a.in);
    doc = report_document("confidence", loaded.descriptor);
    doc["table"] = table_json(loaded.table);
    b = bookmaker_informedness(loaded.table);
    e = evenness_factor(loaded.table);
    n = loaded.table.n();
  } else {
    if (!a.b || !a.n) throw UsageError("give --table/--pairs, or both --b and --n");
    b = *a.b;
    n = *a.n;
    doc = report_document("confidence", json{{"b", b}, {"n", n}, {"evenness", e}});
  }
  const double x = multiplier(a.x, a.alpha, a.one_tailed);
  SseRule empirical_rule = default_rule(CiVariant::empirical);
  if (!a.rule.empty()) empirical_rule = *sse_rule_from_string(a.rule);

  doc["estimate"] = {{"informedness", b}, {"n", n}, {"evenness", e}, {"x", x}};
  json list = json::array();
  list.push_back(confidence_json(confidence_interval(0.0, n, e, x, CiVariant::null)));
  list.push_back(confidence_json(confidence_interval(b, n, e, x, CiVariant::empirical, empirical_rule)));
  list.push_back(confidence_json(confidence_interval(1.0, n, e, x, CiVariant::full)));
  doc["confidence"] = list;
  render(out, doc, render_options(a.out));
}

// compare ---------------------------------------------------------------

struct CompareArgs {
  std::string a;
  std::string b;
  OutputOptions out;
  double x = kTwoTailed95;
  std::optional<double> alpha;
  bool one_tailed = false;
  bool repair = false;
};

void compare(const CompareArgs& a, std::ostream& out) {
  const double x = multiplier(a.x, a.alpha, a.one_tailed);
  auto load = [&](const std::string& file) {
    InputOptions in;
    in.table = file;
    in.repair = a.repair;
    return load_input(in);
  };
  const auto ta = load(a.a);
  const auto tb = load(a.b);
  const SystemEstimate ea{bookmaker_informedness(ta.table), ta.table.n(), evenness_factor(ta.table)};
  const SystemEstimate eb{bookmaker_informedness(tb.table), tb.table.n(), evenness_factor(tb.table)};
  const auto c = compare_systems(ea, eb, x);

  auto doc = report_document("compare", json{{"a", a.a}, {"b", a.b}});
  auto system = [](const std::string& file, const SystemEstimate& e, const ConfidenceInterval& ci) {
    return json{{"file", file}, {"informedness", e.b}, {"n", e.n}, {"evenness", e.evenness}, {"ci", confidence_json(ci)}};
  };
  doc["systems"] = {{"a", system(a.a, ea, c.a_ci)}, {"b", system(a.b, eb, c.b_ci)}};
  doc["comparison"] = {{"a_in_b", c.a_in_b},
                       {"b_in_a", c.b_in_a},
                       {"mutually_exclusive", c.mutually_exclusive},
                       {"x", x}};
  render(out, doc, render_options(a.out));
}

// simulate --------------------------------------------------------------

struct SimulateArgs {
  SimConfig config;
  std::optional<std::uint64_t> seed;
  std::string dist = "absolute_shifted_normal";
  std::string margin_dist = "binomial";
  std::string perfect_dist = "uniform_split";
  std::string out_dir;
  bool no_constrain = false;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError(fmt::format("cannot write '{}'", path.string()));
  file << content;
  file.close();
  if (!file) throw DataError(fmt::format("failed writing '{}'", path.string()));
}

void simulate(SimulateArgs a, std::ostream& out, std::ostream& err) {
  auto& config = a.config;
  config.seed = a.seed.value_or(fresh_seed());
  config.cell_distribution = *cell_distribution_from_string(a.dist);
  config.margin_distribution = *margin_distribution_from_string(a.margin_dist);
  config.perfect_diagonal = *perfect_diagonal_from_string(a.perfect_dist);
  config.enforce_integer = !a.no_constrain;
  config.validate();

  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw DataError(fmt::format("cannot create output directory '{}'", dir.string()));
  }

  const auto runs = run_grid(config);
  const auto report = coverage_report(runs, config.alpha);
  std::ostringstream runs_csv, summary_csv;
  write_runs_csv(runs_csv, runs);
  write_summary_csv(summary_csv, report);
  write_file(dir / "runs.csv", runs_csv.str());
  write_file(dir / "summary.csv", summary_csv.str());

  out << fmt::format("seed {}\n", config.seed);
  out << fmt::format("runs {} ({} failed)\n", report.runs, report.failed);
  out << fmt::format("coverage {:.4f}\n", report.coverage);
  out << fmt::format("wrote {}\n", (dir / "runs.csv").string());
  out << fmt::format("wrote {}\n", (dir / "summary.csv").string());
  if (report.small_n_warning) {
    err << fmt::format(
        "warning: expected count per cell n/k^2 = {:.2f} is below 5; chi-squared p-values and "
        "confidence bands are unreliable at this size\n",
        static_cast<double>(config.n) / static_cast<double>(config.k * config.k));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Informedness, markedness and their significance for contingency tables", "bookmaker"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  EvaluateArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "all measures of a contingency table");
  add_input_options(ev_cmd, ev.in);
  add_output_options(ev_cmd, ev.out);

  SignificanceArgs sig;
  auto* sig_cmd = app.add_subcommand("significance", "chi-squared, G-squared and Fisher tests");
  add_input_options(sig_cmd, sig.in);
  add_output_options(sig_cmd, sig.out);
  sig_cmd->add_option("--family", sig.families, "all, positive, kb, km, kbm, x, conv, full, fisher")
      ->delimiter(',')
      ->check(CLI::IsMember({"all", "positive", "kb", "km", "kbm", "x", "conv", "full", "fisher"}));
  sig_cmd->add_flag("--yates", sig.yates, "Yates correction on cells with expectation below 5");
  sig_cmd->add_flag("--williams", sig.williams, "Williams correction on G-squared");
  sig_cmd->add_option("--alpha", sig.alpha, "significance level")->check(CLI::Range(0.0, 1.0));
  sig_cmd->add_option("--fisher-samples", sig.fisher_samples, "Monte Carlo samples for K > 2 Fisher")
      ->check(CLI::Range(std::size_t{1000}, std::numeric_limits<std::size_t>::max()));
  sig_cmd->add_option("--seed", sig.seed, "seed for the K > 2 Fisher sampler");

  ConfidenceArgs ci;
  auto* ci_cmd = app.add_subcommand("confidence", "confidence bands for informedness");
  add_input_options(ci_cmd, ci.in);
  add_output_options(ci_cmd, ci.out);
  ci_cmd->add_option("--b", ci.b, "informedness estimate")->check(CLI::Range(-1.0, 1.0));
  ci_cmd->add_option("--n", ci.n, "sample size")->check(CLI::PositiveNumber);
  ci_cmd->add_option("--evenness", ci.evenness, "evenness factor E (default 1)")->check(CLI::PositiveNumber);
  auto* ci_x = ci_cmd->add_option("--x", ci.x, "normal multiplier (default 1.96)")->check(CLI::PositiveNumber);
  ci_cmd->add_option("--alpha", ci.alpha, "derive the multiplier from alpha")->excludes(ci_x)->check(CLI::Range(0.0, 1.0));
  ci_cmd->add_flag("--one-tailed", ci.one_tailed, "one-tailed multiplier when --alpha is given");
  ci_cmd->add_option("--rule", ci.rule, "deviation profile for the empirical band")
      ->check(CLI::IsMember({"constant_one", "one_minus_absB", "weighted_arithmetic", "geometric", "harmonic"}));

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "do two systems' informedness bands exclude each other");
  cmp_cmd->add_option("--a", cmp.a, "first system's table")->required();
  cmp_cmd->add_option("--b", cmp.b, "second system's table")->required();
  add_output_options(cmp_cmd, cmp.out);
  auto* cmp_x = cmp_cmd->add_option("--x", cmp.x, "normal multiplier (default 1.96)")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--alpha", cmp.alpha, "derive the multiplier from alpha")->excludes(cmp_x)->check(CLI::Range(0.0, 1.0));
  cmp_cmd->add_flag("--one-tailed", cmp.one_tailed, "one-tailed multiplier when --alpha is given");
  cmp_cmd->add_flag("--repair-margins", cmp.repair, "add unit counts to empty rows/columns instead of failing");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo coverage and power grid");
  sim_cmd->add_option("--k", sim.config.k, "number of classes")->check(CLI::Range(2, 64));
  sim_cmd->add_option("--n", sim.config.n, "items per table")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--steps", sim.config.steps, "informedness levels from 0 to 1")->check(CLI::Range(2, 1001));
  sim_cmd->add_option("--runs", sim.config.runs_per_step, "runs per level")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "master seed (generated and printed when omitted)");
  sim_cmd->add_option("--dist", sim.dist, "cell distribution")
      ->check(CLI::IsMember({"uniform", "binomial_copula", "absolute_shifted_normal"}));
  sim_cmd->add_option("--margin-dist", sim.margin_dist, "margin distribution")
      ->check(CLI::IsMember({"uniform", "binomial"}));
  sim_cmd->add_option("--perfect-dist", sim.perfect_dist, "diagonal of the fully informed table")
      ->check(CLI::IsMember({"uniform_split", "independent_uniform"}));
  sim_cmd->add_option("--x", sim.config.x, "normal multiplier for the bands")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--alpha", sim.config.alpha, "significance level for rejection rates")
      ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--fisher-samples", sim.config.fisher_samples, "Fisher Monte Carlo samples, 0 to skip");
  sim_cmd->add_option("--threads", sim.config.threads, "worker threads")->check(CLI::Range(1, 256));
  sim_cmd->add_flag("--no-constrain", sim.no_constrain, "keep rounded totals instead of forcing n");
  sim_cmd->add_option("--out", sim.out_dir, "output directory for runs.csv and summary.csv")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*ev_cmd) evaluate(ev, out);
    if (*sig_cmd) significance(sig, out);
    if (*ci_cmd) confidence(ci, out);
    if (*cmp_cmd) compare(cmp, out);
    if (*sim_cmd) simulate(sim, out, err);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace bookmaker::cli
