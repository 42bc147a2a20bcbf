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

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "bookmaker/montecarlo.hpp"

namespace bookmaker {
namespace {

// Fixed precision keeps the files byte-stable; NaN becomes an empty field.
std::string num(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.10g}", v);
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

void write_runs_csv(std::ostream& out, std::span<const SimRun> runs) {
  out << "step,run,l,n_realized,B,M,BMG,kappa,cramers_v_chi2,cramers_v_g2,p_chi2,p_g2,p_fisher,"
         "ci_lo,ci_hi,within_band,seed_stream\n";
  for (const auto& r : runs) {
    const std::string n_realized = r.table ? fmt::format("{}", r.table->n()) : std::string();
    if (!r.ok()) {
      out << fmt::format("{},{},{},{},,,,,,,,,,,,,{:016x}\n", r.step, r.run, num(r.level), n_realized,
                         r.seed_stream);
      continue;
    }
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:016x}\n", r.step, r.run, num(r.level),
                       n_realized, num(r.stats.informedness), num(r.stats.markedness), num(r.stats.correlation),
                       num(r.stats.kappa), num(r.cramers_v_chi2), num(r.cramers_v_g2), num(r.full_chi2.p_value),
                       num(r.full_g2.p_value), num(r.p_fisher), num(r.ci_empirical.lo()),
                       num(r.ci_empirical.hi()), r.within_band ? 1 : 0, r.seed_stream);
  }
}

void write_summary_csv(std::ostream& out, const CoverageReport& report) {
  out << "step,l,runs,failed,coverage,reject_chi2,reject_g2,reject_fisher,reject_kb,reject_km,reject_kbm,"
         "mean_B,sd_B,mean_M,sd_M,mean_BMG,sd_BMG,mean_kappa,sd_kappa,mean_V,sd_V,small_n\n";
  for (const auto& s : report.steps) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", s.step, num(s.level),
                       s.runs, s.failed, num(s.coverage), num(s.reject_chi2), num(s.reject_g2),
                       num(s.reject_fisher), num(s.reject_kb), num(s.reject_km), num(s.reject_kbm), num(s.mean_b),
                       num(s.sd_b), num(s.mean_m), num(s.sd_m), num(s.mean_bmg), num(s.sd_bmg), num(s.mean_kappa),
                       num(s.sd_kappa), num(s.mean_v), num(s.sd_v), s.small_n ? 1 : 0);
  }
}

}  // namespace bookmaker
