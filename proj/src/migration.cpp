// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include "nocmig/migration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace nocmig {

void validate(const MigrationCostParams& p) {
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError(fmt::format("migration {} must be >= 0, got {}", name, v));
    }
  };
  non_negative(p.state_bits, "state_bits");
  non_negative(p.e_bit_hop, "e_bit_hop");
  non_negative(p.downtime_fixed, "downtime_fixed");
  non_negative(p.t_bit_hop, "t_bit_hop");
}

int manhattan(Coord a, Coord b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

std::vector<Link> xy_route(const GridSpec& grid, Coord src, Coord dst) {
  std::vector<Link> route;
  route.reserve(static_cast<std::size_t>(manhattan(src, dst)));
  Coord at = src;
  auto hop = [&](Coord next) {
    route.push_back({cell_index(grid, at), cell_index(grid, next)});
    at = next;
  };
  while (at.x != dst.x) hop({at.x + (dst.x > at.x ? 1 : -1), at.y});
  while (at.y != dst.y) hop({at.x, at.y + (dst.y > at.y ? 1 : -1)});
  return route;
}

std::size_t MigrationPlan::transfer_count() const {
  std::size_t n = 0;
  for (const auto& ph : phases) n += ph.size();
  return n;
}

int MigrationPlan::max_hops(std::size_t phase) const {
  int m = 0;
  for (const auto& t : phases.at(phase)) m = std::max(m, t.hops());
  return m;
}

std::vector<Coord> MigrationPlan::source_cells() const {
  std::vector<Coord> out;
  for (const auto& ph : phases) {
    for (const auto& t : ph) out.push_back(t.src);
  }
  std::sort(out.begin(), out.end(), [](Coord a, Coord b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
  return out;
}

MigrationPlan plan(const Permutation& perm, const MigrationCostParams& params) {
  validate(params);
  const GridSpec& grid = perm.grid();
  MigrationPlan out{perm, {}, 0, 0.0, 0.0};
  std::vector<std::set<Link>> used;

  for (int i = 0; i < grid.cells(); ++i) {
    const int j = perm(i);
    if (j == i) continue;
    Transfer t{cell_coord(grid, i), cell_coord(grid, j), {}};
    t.route = xy_route(grid, t.src, t.dst);
    out.total_hops += t.hops();

    std::size_t phase = 0;
    for (; phase < used.size(); ++phase) {
      const auto& links = used[phase];
      const bool clash = std::any_of(t.route.begin(), t.route.end(), [&](const Link& l) { return links.count(l) > 0; });
      if (!clash) break;
    }
    if (phase == used.size()) {
      used.emplace_back();
      out.phases.emplace_back();
    }
    used[phase].insert(t.route.begin(), t.route.end());
    out.phases[phase].push_back(std::move(t));
  }

  out.energy = migration_energy(out, params);
  out.downtime = migration_downtime(out, params);
  return out;
}

MigrationPlan plan(const MigrationFunction& fn, const GridSpec& grid, const MigrationCostParams& params) {
  return plan(as_permutation(fn, grid), params);
}

double migration_energy(const MigrationPlan& plan, const MigrationCostParams& params) {
  return static_cast<double>(plan.total_hops) * params.state_bits * params.e_bit_hop;
}

double migration_downtime(const MigrationPlan& plan, const MigrationCostParams& params) {
  if (plan.phases.empty()) return 0.0;
  if (params.mode == MigrationCostParams::DowntimeMode::Fixed) return params.downtime_fixed;
  // Phases run back to back; each lasts as long as its longest transfer.
  double total = 0.0;
  for (std::size_t p = 0; p < plan.phases.size(); ++p) {
    total += params.state_bits * params.t_bit_hop * static_cast<double>(plan.max_hops(p));
  }
  return total;
}

double throughput_penalty(double downtime, double period) {
  if (!(period > 0.0)) throw ConfigError(fmt::format("migration period must be positive, got {}", period));
  return downtime / period;
}

Mapping execute(const Mapping& mapping, const MigrationPlan& plan) {
  if (!(mapping.grid() == plan.grid())) {
    throw ConfigError(fmt::format("plan for {}x{} grid applied to {}x{} mapping", plan.grid().nx, plan.grid().ny,
                                  mapping.grid().nx, mapping.grid().ny));
  }
  std::vector<Coord> moved;
  moved.reserve(static_cast<std::size_t>(mapping.size()));
  for (const Coord c : mapping.assignment()) moved.push_back(plan.permutation(c));
  return Mapping(mapping.grid(), std::move(moved));
}

void write_plan(std::ostream& os, const MigrationPlan& plan) {
  os << "phase,src_x,src_y,dst_x,dst_y,hops\n";
  for (std::size_t p = 0; p < plan.phases.size(); ++p) {
    for (const auto& t : plan.phases[p]) {
      fmt::print(os, "{},{},{},{},{},{}\n", p, t.src.x, t.src.y, t.dst.x, t.dst.y, t.hops());
    }
  }
}

}  // namespace nocmig
