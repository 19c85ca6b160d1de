// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nocmig/grid.hpp"
#include "nocmig/transforms.hpp"

namespace nocmig {

struct MigrationCostParams {
  enum class DowntimeMode { Fixed, Detailed };

  double state_bits = 65536.0;     // configuration + state carried per PE
  double e_bit_hop = 1e-12;        // J per bit per hop
  double downtime_fixed = 1.744e-6;  // s per migration event
  double t_bit_hop = 1e-10;        // s per bit per hop, detailed mode only
  DowntimeMode mode = DowntimeMode::Fixed;
};

void validate(const MigrationCostParams& p);

/// Directed mesh link between two neighbouring cells (row-major indices).
struct Link {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

struct Transfer {
  Coord src;
  Coord dst;
  std::vector<Link> route;

  int hops() const { return static_cast<int>(route.size()); }
};

/// Dimension-ordered path: all X hops first, then Y.
std::vector<Link> xy_route(const GridSpec& grid, Coord src, Coord dst);

int manhattan(Coord a, Coord b);

struct MigrationPlan {
  Permutation permutation;
  std::vector<std::vector<Transfer>> phases;
  int total_hops = 0;
  double energy = 0.0;    // J
  double downtime = 0.0;  // s

  const GridSpec& grid() const { return permutation.grid(); }
  std::size_t transfer_count() const;
  /// Largest route length among the transfers of one phase.
  int max_hops(std::size_t phase) const;
  /// PEs that send their state blob, row-major.
  std::vector<Coord> source_cells() const;
};

/// Greedy earliest-fit packing of the non-fixed transfers (row-major source
/// order) into phases whose directed-link sets are pairwise disjoint.
MigrationPlan plan(const Permutation& perm, const MigrationCostParams& params);
MigrationPlan plan(const MigrationFunction& fn, const GridSpec& grid, const MigrationCostParams& params);

/// total_hops · state_bits · e_bit_hop
double migration_energy(const MigrationPlan& plan, const MigrationCostParams& params);

/// Stall length of one event. Empty plans cost nothing.
double migration_downtime(const MigrationPlan& plan, const MigrationCostParams& params);

/// Fraction of compute time lost: downtime / period.
double throughput_penalty(double downtime, double period);

/// Moves every workload to permutation(current PE).
Mapping execute(const Mapping& mapping, const MigrationPlan& plan);

/// "phase,src_x,src_y,dst_x,dst_y,hops" header then one line per transfer.
void write_plan(std::ostream& os, const MigrationPlan& plan);

}  // namespace nocmig
