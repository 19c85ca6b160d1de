// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include "nocmig/grid.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace nocmig {

GridSpec make_grid(int nx, int ny, double cell_area, double die_thickness) {
  if (nx < 1 || ny < 1) {
    throw ConfigError(fmt::format("grid dimensions must be >= 1, got {}x{}", nx, ny));
  }
  if (!(cell_area > 0.0) || !std::isfinite(cell_area)) {
    throw ConfigError(fmt::format("cell area must be positive, got {}", cell_area));
  }
  if (!(die_thickness > 0.0) || !std::isfinite(die_thickness)) {
    throw ConfigError(fmt::format("die thickness must be positive, got {}", die_thickness));
  }
  return GridSpec{nx, ny, cell_area, die_thickness, std::sqrt(cell_area)};
}

int cell_index(const GridSpec& g, Coord c) {
  if (!in_bounds(g, c)) {
    throw BoundsError(fmt::format("coordinate {} outside {}x{} grid", to_string(c), g.nx, g.ny));
  }
  return c.y * g.nx + c.x;
}

Coord cell_coord(const GridSpec& g, int index) {
  if (index < 0 || index >= g.cells()) {
    throw BoundsError(fmt::format("cell index {} outside {}x{} grid", index, g.nx, g.ny));
  }
  return {index % g.nx, index / g.nx};
}

std::string to_string(Coord c) { return fmt::format("({},{})", c.x, c.y); }

Mapping Mapping::identity(const GridSpec& grid) {
  std::vector<Coord> a;
  a.reserve(static_cast<std::size_t>(grid.cells()));
  for (int i = 0; i < grid.cells(); ++i) a.push_back(cell_coord(grid, i));
  return Mapping(grid, std::move(a));
}

Mapping::Mapping(const GridSpec& grid, std::vector<Coord> assignment)
    : grid_(grid), assignment_(std::move(assignment)), occupant_(static_cast<std::size_t>(grid.cells()), -1) {
  if (static_cast<int>(assignment_.size()) != grid.cells()) {
    throw ConfigError(fmt::format("mapping has {} workloads for {} PEs", assignment_.size(), grid.cells()));
  }
  for (std::size_t w = 0; w < assignment_.size(); ++w) {
    const Coord c = assignment_[w];
    if (!in_bounds(grid_, c)) {
      throw ConfigError(fmt::format("workload {} placed outside grid at {}", w, to_string(c)));
    }
    int& slot = occupant_[static_cast<std::size_t>(cell_index(grid_, c))];
    if (slot != -1) {
      throw ConfigError(fmt::format("workloads {} and {} both placed at {}", slot, w, to_string(c)));
    }
    slot = static_cast<int>(w);
  }
}

Mapping Mapping::swapped(int a, int b) const {
  Mapping m = *this;
  auto& as = m.assignment_;
  std::swap(as.at(static_cast<std::size_t>(a)), as.at(static_cast<std::size_t>(b)));
  m.occupant_[static_cast<std::size_t>(cell_index(grid_, as[static_cast<std::size_t>(a)]))] = a;
  m.occupant_[static_cast<std::size_t>(cell_index(grid_, as[static_cast<std::size_t>(b)]))] = b;
  return m;
}

double PowerProfile::power_of(int workload) const {
  if (workload >= 0 && static_cast<std::size_t>(workload) < workload_power.size()) {
    return workload_power[static_cast<std::size_t>(workload)];
  }
  return idle_power;
}

double PowerProfile::total(int cells) const {
  double sum = 0.0;
  for (int w = 0; w < cells; ++w) sum += power_of(w);
  return sum;
}

PowerProfile make_profile(std::vector<double> active_power, double idle_power) {
  PowerProfile p{std::move(active_power), idle_power};
  if (idle_power < 0.0) {
    const double mean = p.workload_power.empty()
                            ? 0.0
                            : std::accumulate(p.workload_power.begin(), p.workload_power.end(), 0.0) /
                                  static_cast<double>(p.workload_power.size());
    p.idle_power = 0.05 * mean;
  }
  return p;
}

void validate(const PowerProfile& profile, const GridSpec& grid) {
  if (static_cast<int>(profile.workload_power.size()) > grid.cells()) {
    throw ConfigError(fmt::format("profile has {} workloads but grid has {} PEs", profile.workload_power.size(),
                                  grid.cells()));
  }
  for (std::size_t w = 0; w < profile.workload_power.size(); ++w) {
    const double p = profile.workload_power[w];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ConfigError(fmt::format("workload {} has invalid power {}", w, p));
    }
  }
  if (!(profile.idle_power >= 0.0) || !std::isfinite(profile.idle_power)) {
    throw ConfigError(fmt::format("idle power must be >= 0, got {}", profile.idle_power));
  }
}

Eigen::VectorXd power_vector(const PowerProfile& profile, const Mapping& mapping) {
  const GridSpec& g = mapping.grid();
  Eigen::VectorXd p(g.cells());
  for (int w = 0; w < mapping.size(); ++w) {
    p(cell_index(g, mapping.at(w))) = profile.power_of(w);
  }
  return p;
}

GeneratedScenario generate_warm_band(const GridSpec& grid, double base_p, double band_p, int band_row) {
  if (!(base_p >= 0.0) || !(band_p > base_p)) {
    throw ConfigError(fmt::format("warm band needs band power > base power >= 0, got base {} band {}", base_p,
                                  band_p));
  }
  if (band_row < 0 || band_row >= grid.ny) {
    throw ConfigError(fmt::format("band row {} outside [0,{})", band_row, grid.ny));
  }
  Mapping m = Mapping::identity(grid);
  std::vector<double> power(static_cast<std::size_t>(grid.cells()), base_p);
  for (int w = 0; w < grid.cells(); ++w) {
    if (m.at(w).y == band_row) power[static_cast<std::size_t>(w)] = band_p;
  }
  return {make_profile(std::move(power)), std::move(m)};
}

GeneratedScenario generate_center_hotspot(const GridSpec& grid, double base_p, double hot_p) {
  if (!(base_p >= 0.0) || !(hot_p > base_p)) {
    throw ConfigError(fmt::format("center hotspot needs hot power > base power >= 0, got base {} hot {}", base_p,
                                  hot_p));
  }
  if (grid.nx % 2 == 0 || grid.ny % 2 == 0) {
    throw ConfigError(fmt::format("{}x{} grid has no unique centre PE", grid.nx, grid.ny));
  }
  Mapping m = Mapping::identity(grid);
  std::vector<double> power(static_cast<std::size_t>(grid.cells()), base_p);
  power[static_cast<std::size_t>(m.workload_at({(grid.nx - 1) / 2, (grid.ny - 1) / 2}))] = hot_p;
  return {make_profile(std::move(power)), std::move(m)};
}

}  // namespace nocmig
