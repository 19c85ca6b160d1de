// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "nocmig/grid.hpp"
#include "nocmig/migration.hpp"
#include "nocmig/placement.hpp"
#include "nocmig/thermal.hpp"
#include "nocmig/transforms.hpp"

namespace nocmig {

/// Everything one closed-loop run needs. Times in seconds.
struct ScenarioConfig {
  std::string name = "scenario";
  GridSpec grid = make_grid(4, 4);
  PowerProfile profile;
  /// Empty means "auto": thermally-aware annealed placement of `profile`.
  std::optional<Mapping> initial_mapping;
  MigrationFunction migration_fn;
  double period = 109e-6;
  double sim_duration = 0.1;
  /// Statistics ignore [0, warmup) so the migrated run can settle.
  double warmup = 0.06;
  double dt = 1e-6;
  ThermalParams thermal;
  MigrationCostParams cost;
  AnnealConfig anneal;
  /// Deposit each event's transfer energy as a one-step heat pulse on the source PEs.
  bool deposit_energy = true;
  /// Drop every PE to idle power for the downtime of each event.
  bool stall_idle = false;
  std::uint64_t seed = 1;
  bool record_trace = false;
  int trace_every = 1;  // steps between trace rows

  bool migration_enabled() const { return migration_fn.kind != MigrationFunction::Kind::Identity; }
};

/// Throws ConfigError (or UnsupportedFunction) on the first problem found.
void validate(const ScenarioConfig& cfg);

/// INI-style scenario with sections [grid] [profile] [migration] [thermal] [sim].
/// Relative mapping paths resolve against `base_dir`; `default_name` applies
/// when [sim] has no name.
ScenarioConfig parse_scenario(std::istream& is, const std::filesystem::path& base_dir = {},
                              const std::string& default_name = "scenario");
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace nocmig
