// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include <algorithm>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nocmig/sim.hpp"

namespace nocmig {
namespace {

// Commas and quotes would break the row; errors are free text.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void write_summary_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "scenario,function,period_us,peak_overall_c,peak_static_baseline_c,peak_reduction_c,"
        "time_avg_mean_temp_c,max_spatial_spread_c,penalty_pct,migration_count,migration_energy_j,status\n";
  for (const auto& c : cells) {
    if (!c.summary) {
      fmt::print(os, "{},{},{:.6f},,,,,,,,,{}\n", csv_field(c.scenario), to_string(c.function), c.period * 1e6,
                 csv_field("error: " + c.error));
      continue;
    }
    const RunSummary& s = *c.summary;
    fmt::print(os, "{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{:.6e},ok\n", csv_field(s.scenario),
               to_string(s.function), s.period * 1e6, s.peak_overall, s.peak_static_baseline, s.peak_reduction,
               s.time_avg_mean_temp, s.max_spatial_spread, s.throughput_penalty * 100.0, s.migration_count,
               s.total_migration_energy);
  }
}

void write_text_summary(std::ostream& os, const std::vector<SweepCell>& cells) {
  std::vector<std::string> order;
  std::map<std::string, const RunSummary*> best;
  int failed = 0;
  for (const auto& c : cells) {
    if (!c.summary) {
      ++failed;
      continue;
    }
    const RunSummary& s = *c.summary;
    auto [it, fresh] = best.try_emplace(s.scenario, &s);
    if (fresh) {
      order.push_back(s.scenario);
    } else if (s.peak_reduction > it->second->peak_reduction) {
      it->second = &s;
    }
  }
  for (const auto& name : order) {
    const RunSummary& s = *best.at(name);
    fmt::print(os, "scenario {}: best {} at {:.1f} us, peak {:.3f} C (baseline {:.3f} C, reduction {:.3f} C), "
               "penalty {:.3f} %\n",
               name, to_string(s.function), s.period * 1e6, s.peak_overall, s.peak_static_baseline, s.peak_reduction,
               s.throughput_penalty * 100.0);
  }
  for (const auto& c : cells) {
    if (!c.summary) fmt::print(os, "failed: {} {} at {:.1f} us: {}\n", c.scenario, to_string(c.function), c.period * 1e6, c.error);
  }
  if (order.empty() && failed == 0) os << "no runs\n";
}

void write_trace_csv(std::ostream& os, const std::vector<ThermalState<double>>& trace) {
  if (trace.empty()) return;
  const auto blocks = trace.front().temps.size() - 1;
  os << "time_s";
  for (Eigen::Index i = 0; i < blocks; ++i) fmt::print(os, ",t_block_{}", i);
  os << ",t_sink\n";
  for (const auto& s : trace) {
    fmt::print(os, "{:.9e}", s.time);
    for (Eigen::Index i = 0; i < s.temps.size(); ++i) fmt::print(os, ",{:.6f}", s.temps(i));
    os << '\n';
  }
}

}  // namespace nocmig
