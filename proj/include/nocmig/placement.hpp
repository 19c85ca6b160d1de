// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

#include "nocmig/grid.hpp"
#include "nocmig/thermal.hpp"

namespace nocmig {

struct AnnealConfig {
  int iterations = 20000;
  double t_start = 1.0;  // °C scale of accepted uphill moves
  double t_end = 1e-3;
  std::uint64_t seed = 1;
};

void validate(const AnnealConfig& cfg);

/// Steady-state peak as a function of the block power vector, using the
/// precomputed block-to-block thermal resistance matrix.
class PeakObjective {
 public:
  explicit PeakObjective(const ThermalNetwork<double>& net);

  double operator()(const Eigen::VectorXd& block_power) const;

 private:
  Eigen::MatrixXd resistance_;  // K/W, blocks x blocks
  double ambient_;
};

/// Steady-state peak temperature of `mapping`, °C.
double evaluate(const Mapping& mapping, const PowerProfile& profile, const ThermalNetwork<double>& net);

struct PlacementResult {
  Mapping mapping;
  double peak = 0.0;        // evaluate(mapping)
  double start_peak = 0.0;  // evaluate(start)
  int accepted_moves = 0;
};

/// Simulated annealing over pairwise workload swaps, geometric cooling.
/// Returns the best mapping visited, never worse than `start`.
PlacementResult anneal(const PowerProfile& profile, const Mapping& start, const ThermalNetwork<double>& net,
                       const AnnealConfig& cfg);

/// Annealed placement starting from the identity mapping.
Mapping place(const PowerProfile& profile, const GridSpec& grid, const ThermalNetwork<double>& net,
              const AnnealConfig& cfg);

/// CSV with header "workload_id,x,y".
void write_mapping(std::ostream& os, const Mapping& mapping);
Mapping read_mapping(std::istream& is, const GridSpec& grid);

}  // namespace nocmig
