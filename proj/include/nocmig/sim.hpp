// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nocmig/scenario.hpp"
#include "nocmig/thermal.hpp"
#include "nocmig/transforms.hpp"

namespace nocmig {

/// Statistics over the post-warm-up window of one run. Temperatures in °C.
struct RunSummary {
  std::string scenario;
  MigrationFunction function;
  double period = 0.0;  // s

  double peak_overall = 0.0;
  double peak_static_baseline = 0.0;
  double peak_reduction = 0.0;  // baseline − overall; negative when migration hurts
  double time_avg_mean_temp = 0.0;
  double max_spatial_spread = 0.0;
  double throughput_penalty = 0.0;  // ratio
  int migration_count = 0;
  double total_migration_energy = 0.0;  // J
};

struct RunResult {
  RunSummary summary;
  Mapping initial_mapping;
  Mapping final_mapping;
  /// Address transform the I/O migration unit holds at the end of the run.
  CumulativeTransform io_transform;
  /// Sampled states when cfg.record_trace, starting at t = 0.
  std::vector<ThermalState<double>> trace;
};

/// Transient run with periodic migration plus a migration-free baseline from
/// the same initial steady state.
RunResult run(const ScenarioConfig& cfg);

struct SweepCell {
  std::string scenario;
  MigrationFunction function;
  double period = 0.0;
  std::optional<RunSummary> summary;
  std::string error;  // set when the run failed
};

/// functions × periods in row-major order (function outer). A failing cell
/// records its error and the sweep continues. `threads` = 0 picks the
/// hardware concurrency.
std::vector<SweepCell> sweep(const ScenarioConfig& base, const std::vector<MigrationFunction>& functions,
                             const std::vector<double>& periods, unsigned threads = 0);

/// One CSV row per cell; temperatures, period_us and penalty_pct with six decimals.
void write_summary_csv(std::ostream& os, const std::vector<SweepCell>& cells);
/// Best function (largest peak reduction) per scenario, plus any failed cells.
void write_text_summary(std::ostream& os, const std::vector<SweepCell>& cells);
/// time_s, t_block_0 … t_block_{n−1}, t_sink
void write_trace_csv(std::ostream& os, const std::vector<ThermalState<double>>& trace);

}  // namespace nocmig
