// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include "nocmig/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>

#include "nocmig/migration.hpp"
#include "nocmig/placement.hpp"

namespace nocmig {
namespace {

// Simulation time runs on an integer picosecond lattice so that period
// boundaries and stall ends land exactly and only a handful of distinct step
// lengths reach the factorisation cache.
using Ticks = std::int64_t;
constexpr double kTickSeconds = 1e-12;

Ticks to_ticks(double seconds) { return static_cast<Ticks>(std::llround(seconds / kTickSeconds)); }
double to_seconds(Ticks t) { return static_cast<double>(t) * kTickSeconds; }

struct LoopStats {
  double peak = 0.0;
  double mean_integral = 0.0;
  double window = 0.0;
  double max_spread = 0.0;
  int events = 0;
};

struct LoopOutput {
  LoopStats stats;
  Mapping final_mapping;
  CumulativeTransform io_transform;
  std::vector<ThermalState<double>> trace;
};

LoopOutput simulate(const ScenarioConfig& cfg, const ThermalNetwork<double>& net, const Mapping& start,
                    const std::optional<MigrationPlan>& plan) {
  TransientStepper<double> stepper(net);
  Mapping mapping = start;
  Eigen::VectorXd power = power_vector(cfg.profile, mapping);
  const Eigen::VectorXd idle = Eigen::VectorXd::Constant(power.size(), cfg.profile.idle_power);
  ThermalState<double> state = steady_state(net, power);

  const Ticks duration = to_ticks(cfg.sim_duration);
  const Ticks warmup = to_ticks(cfg.warmup);
  const Ticks dt = to_ticks(cfg.dt);
  const Ticks period = to_ticks(cfg.period);
  const bool migrating = plan && !plan->phases.empty();
  const Ticks stall = migrating && cfg.stall_idle ? to_ticks(plan->downtime) : 0;

  LoopOutput out{{}, mapping, CumulativeTransform(cfg.grid), {}};
  LoopStats& st = out.stats;
  auto sample = [&](Ticks t, double h) {
    if (t < warmup) return;
    st.peak = std::max(st.peak, peak(state));
    st.max_spread = std::max(st.max_spread, spatial_spread(state));
    st.mean_integral += mean_block_temp(state) * h;
    st.window += h;
  };
  if (cfg.record_trace) out.trace.push_back(state);
  st.peak = warmup == 0 ? peak(state) : -INFINITY;
  st.max_spread = warmup == 0 ? spatial_spread(state) : 0.0;

  Eigen::VectorXd pulse = Eigen::VectorXd::Zero(power.size());
  bool pulse_pending = false;
  Ticks t = 0;
  Ticks next_event = migrating ? period : duration + 1;
  Ticks stall_end = 0;
  std::int64_t steps = 0;

  while (t < duration) {
    Ticks end = std::min({t + dt, duration, next_event});
    if (t < stall_end) end = std::min(end, stall_end);
    const double h = to_seconds(end - t);

    Eigen::VectorXd applied = t < stall_end ? idle : power;
    if (pulse_pending) {
      applied += pulse / h;
      pulse_pending = false;
    }
    state = stepper.step(state, applied, h);
    state.time = to_seconds(end);
    t = end;
    ++steps;
    sample(t, h);
    if (cfg.record_trace && (steps % cfg.trace_every == 0 || t == duration)) out.trace.push_back(state);

    if (t == next_event) {
      next_event += period;
      if (t >= duration) break;
      ++st.events;
      if (cfg.deposit_energy && plan->energy > 0.0) {
        const auto sources = plan->source_cells();
        pulse.setZero();
        const double share = plan->energy / static_cast<double>(sources.size());
        for (const Coord c : sources) pulse(cell_index(cfg.grid, c)) = share;
        pulse_pending = true;
      }
      stall_end = t + stall;
      mapping = execute(mapping, *plan);
      out.io_transform = compose(out.io_transform, plan->permutation);
      power = power_vector(cfg.profile, mapping);
    }
  }
  out.final_mapping = std::move(mapping);
  return out;
}

}  // namespace

RunResult run(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto net = build_network<double>(cfg.grid, cfg.thermal);

  Mapping start = cfg.initial_mapping ? *cfg.initial_mapping : [&] {
    AnnealConfig anneal = cfg.anneal;
    anneal.seed = cfg.seed;
    return place(cfg.profile, cfg.grid, net, anneal);
  }();

  std::optional<MigrationPlan> plan;
  if (cfg.migration_enabled()) plan = nocmig::plan(cfg.migration_fn, cfg.grid, cfg.cost);

  LoopOutput migrated = simulate(cfg, net, start, plan);
  ScenarioConfig baseline_cfg = cfg;
  baseline_cfg.record_trace = false;
  const LoopOutput baseline = simulate(baseline_cfg, net, start, std::nullopt);

  RunSummary s;
  s.scenario = cfg.name;
  s.function = cfg.migration_fn;
  s.period = cfg.period;
  s.peak_overall = migrated.stats.peak;
  s.peak_static_baseline = baseline.stats.peak;
  s.peak_reduction = s.peak_static_baseline - s.peak_overall;
  s.time_avg_mean_temp = migrated.stats.mean_integral / migrated.stats.window;
  s.max_spatial_spread = migrated.stats.max_spread;
  s.migration_count = migrated.stats.events;
  if (plan && !plan->phases.empty()) {
    s.throughput_penalty = throughput_penalty(plan->downtime, cfg.period);
    s.total_migration_energy = static_cast<double>(s.migration_count) * plan->energy;
  }
  return {std::move(s), std::move(start), std::move(migrated.final_mapping), std::move(migrated.io_transform),
          std::move(migrated.trace)};
}

std::vector<SweepCell> sweep(const ScenarioConfig& base, const std::vector<MigrationFunction>& functions,
                             const std::vector<double>& periods, unsigned threads) {
  if (functions.empty() || periods.empty()) throw ConfigError("sweep needs at least one function and one period");

  std::vector<SweepCell> cells;
  for (const auto& fn : functions) {
    for (double period : periods) cells.push_back({base.name, fn, period, std::nullopt, {}});
  }

  // Resolve "auto" placement once so every cell starts from the same mapping.
  ScenarioConfig shared = base;
  shared.record_trace = false;
  if (!shared.initial_mapping) {
    try {
      AnnealConfig anneal = shared.anneal;
      anneal.seed = shared.seed;
      shared.initial_mapping =
          place(shared.profile, shared.grid, build_network<double>(shared.grid, shared.thermal), anneal);
    } catch (const std::exception& e) {
      for (auto& c : cells) c.error = e.what();
      return cells;
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      ScenarioConfig cfg = shared;
      cfg.migration_fn = cells[i].function;
      cfg.period = cells[i].period;
      try {
        cells[i].summary = run(cfg).summary;
      } catch (const std::exception& e) {
        cells[i].error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return cells;
}

}  // namespace nocmig
