// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nocmig/errors.hpp"

namespace nocmig {

/// Mesh geometry. Cells are square; lengths in millimetres.
struct GridSpec {
  int nx = 1;
  int ny = 1;
  double cell_area = 4.36;     // mm^2 per PE
  double die_thickness = 0.5;  // mm
  double cell_side = 0.0;      // mm, sqrt(cell_area)

  int cells() const { return nx * ny; }
  bool square() const { return nx == ny; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Validates and fills in cell_side.
GridSpec make_grid(int nx, int ny, double cell_area = 4.36, double die_thickness = 0.5);

struct Coord {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

inline bool in_bounds(const GridSpec& g, Coord c) {
  return c.x >= 0 && c.x < g.nx && c.y >= 0 && c.y < g.ny;
}

/// Row-major cell index; throws BoundsError when c is outside the grid.
int cell_index(const GridSpec& g, Coord c);
Coord cell_coord(const GridSpec& g, int index);

std::string to_string(Coord c);

/// Total bijection workload id -> PE. Workload ids are 0..cells()-1.
class Mapping {
 public:
  /// Identity placement: workload i sits on row-major cell i.
  static Mapping identity(const GridSpec& grid);

  /// Throws ConfigError unless `assignment` covers every cell exactly once.
  Mapping(const GridSpec& grid, std::vector<Coord> assignment);

  const GridSpec& grid() const { return grid_; }
  int size() const { return static_cast<int>(assignment_.size()); }

  Coord at(int workload) const { return assignment_.at(static_cast<std::size_t>(workload)); }
  int workload_at(Coord c) const { return occupant_.at(static_cast<std::size_t>(cell_index(grid_, c))); }
  std::span<const Coord> assignment() const { return assignment_; }

  /// Exchanges the PEs of two workloads.
  Mapping swapped(int a, int b) const;

  friend bool operator==(const Mapping& a, const Mapping& b) {
    return a.grid_ == b.grid_ && a.assignment_ == b.assignment_;
  }

 private:
  GridSpec grid_;
  std::vector<Coord> assignment_;
  std::vector<int> occupant_;
};

/// Time-averaged power per workload. Workloads with id >= workload_power.size()
/// are idle fillers dissipating idle_power.
struct PowerProfile {
  std::vector<double> workload_power;  // W
  double idle_power = 0.0;             // W

  double power_of(int workload) const;
  double total(int cells) const;
};

/// Builds a profile and applies the default filler power (5 % of the mean
/// active power) unless `idle_power` is given.
PowerProfile make_profile(std::vector<double> active_power, double idle_power = -1.0);

void validate(const PowerProfile& profile, const GridSpec& grid);

/// Per-cell power vector (row-major) induced by placing `profile` with `mapping`.
Eigen::VectorXd power_vector(const PowerProfile& profile, const Mapping& mapping);

struct GeneratedScenario {
  PowerProfile profile;
  Mapping mapping;
};

/// Row `band_row` dissipates band_p per PE, all others base_p. Identity mapping.
GeneratedScenario generate_warm_band(const GridSpec& grid, double base_p, double band_p, int band_row);

/// The workload at the mesh centre dissipates hot_p, all others base_p. Odd meshes only.
GeneratedScenario generate_center_hotspot(const GridSpec& grid, double base_p, double hot_p);

}  // namespace nocmig
