// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "nocmig/migration.hpp"
#include "nocmig/sim.hpp"

using namespace nocmig;

namespace {

// Short runs: 30 ms with 20 ms warm-up is enough for ordering checks.
ScenarioConfig warm_band(MigrationFunction fn, double period = 109e-6) {
  ScenarioConfig cfg;
  cfg.name = "warm_band";
  cfg.grid = make_grid(4, 4);
  const auto gen = generate_warm_band(cfg.grid, 0.5, 2.0, 1);
  cfg.profile = gen.profile;
  cfg.initial_mapping = gen.mapping;
  cfg.migration_fn = fn;
  cfg.period = period;
  cfg.sim_duration = 30e-3;
  cfg.warmup = 20e-3;
  return cfg;
}

std::string csv(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  write_summary_csv(os, cells);
  return os.str();
}

}  // namespace

TEST_CASE("identity migration changes nothing") {
  const ScenarioConfig cfg = warm_band(MigrationFunction::identity());
  const RunResult r = run(cfg);
  CHECK(r.summary.peak_reduction == 0.0);
  CHECK(r.summary.throughput_penalty == 0.0);
  CHECK(r.summary.migration_count == 0);
  CHECK(r.summary.total_migration_energy == 0.0);
  CHECK(r.final_mapping == *cfg.initial_mapping);

  const auto net = build_network(cfg.grid, cfg.thermal);
  const double steady = peak(steady_state(net, power_vector(cfg.profile, *cfg.initial_mapping)));
  CHECK(std::abs(r.summary.peak_overall - steady) < 1e-4);
  CHECK(std::abs(r.summary.peak_static_baseline - steady) < 1e-4);
}

TEST_CASE("x-y shifting cools the warm band") {
  const RunResult r = run(warm_band(MigrationFunction::translate_xy(1, 1)));
  CHECK(r.summary.peak_reduction > 0.0);
  CHECK(r.summary.peak_reduction == doctest::Approx(r.summary.peak_static_baseline - r.summary.peak_overall));
  CHECK(r.summary.throughput_penalty == doctest::Approx(0.016).epsilon(1e-9));

  const RunResult still = run(warm_band(MigrationFunction::identity()));
  CHECK(r.summary.max_spatial_spread < still.summary.max_spatial_spread);
}

TEST_CASE("event count and energy accounting") {
  ScenarioConfig cfg = warm_band(MigrationFunction::rotation());
  cfg.sim_duration = 1090e-6;  // the event at exactly t = duration is not taken
  cfg.warmup = 0.0;
  const RunResult r = run(cfg);
  CHECK(r.summary.migration_count == 9);
  const double per_event = plan(cfg.migration_fn, cfg.grid, cfg.cost).energy;
  CHECK(per_event == doctest::Approx(40 * 65536 * 1e-12));
  CHECK(r.summary.total_migration_energy == doctest::Approx(9 * per_event));

  cfg.period = 437.2e-6;
  cfg.sim_duration = 5e-3;
  CHECK(run(cfg).summary.migration_count == 11);
}

TEST_CASE("the I/O transform tracks every executed migration") {
  ScenarioConfig cfg = warm_band(MigrationFunction::rotation());
  cfg.sim_duration = 3 * 109e-6 + 1e-6;
  cfg.warmup = 0.0;
  const RunResult r = run(cfg);
  REQUIRE(r.summary.migration_count == 3);
  for (int w = 0; w < 16; ++w) {
    CHECK(r.final_mapping.at(w) == external_address(r.io_transform, r.initial_mapping.at(w)));
  }
  const GridSpec g = cfg.grid;
  const Permutation rot = as_permutation(MigrationFunction::rotation(), g);
  CHECK(r.io_transform.composed() == rot.after(rot).after(rot));
}

TEST_CASE("migration energy deposition only heats") {
  for (const auto& fn : {MigrationFunction::rotation(), MigrationFunction::mirror_xy(),
                         MigrationFunction::translate_xy(1, 1)}) {
    ScenarioConfig on = warm_band(fn);
    on.cost.e_bit_hop = 1e-10;  // large enough to see
    ScenarioConfig off = on;
    off.deposit_energy = false;
    const double t_on = run(on).summary.time_avg_mean_temp;
    const double t_off = run(off).summary.time_avg_mean_temp;
    CHECK(t_on > t_off);
  }
}

TEST_CASE("idle stalls lower the average temperature") {
  ScenarioConfig busy = warm_band(MigrationFunction::translate_xy(1, 1));
  busy.deposit_energy = false;
  ScenarioConfig stalled = busy;
  stalled.stall_idle = true;
  const RunSummary a = run(busy).summary;
  const RunSummary b = run(stalled).summary;
  CHECK(b.time_avg_mean_temp < a.time_avg_mean_temp);
  CHECK(b.throughput_penalty == a.throughput_penalty);
}

TEST_CASE("trace recording") {
  ScenarioConfig cfg = warm_band(MigrationFunction::translate_x(1));
  cfg.sim_duration = 500e-6;
  cfg.warmup = 0.0;
  cfg.record_trace = true;
  cfg.trace_every = 10;
  const RunResult r = run(cfg);
  REQUIRE(!r.trace.empty());
  CHECK(r.trace.front().time == 0.0);
  CHECK(r.trace.back().time == doctest::Approx(500e-6));
  CHECK(r.trace.front().temps.size() == 17);

  std::ostringstream os;
  write_trace_csv(os, r.trace);
  const std::string text = os.str();
  CHECK(text.rfind("time_s,t_block_0,t_block_1,", 0) == 0);
  CHECK(text.find(",t_block_15,t_sink\n") != std::string::npos);
}

TEST_CASE("auto placement runs before simulation") {
  ScenarioConfig cfg = warm_band(MigrationFunction::identity());
  cfg.initial_mapping.reset();
  cfg.anneal.iterations = 2000;
  const RunResult r = run(cfg);
  const auto net = build_network(cfg.grid, cfg.thermal);
  CHECK(evaluate(r.initial_mapping, cfg.profile, net) <
        evaluate(Mapping::identity(cfg.grid), cfg.profile, net));
}

TEST_CASE("runs and sweeps are deterministic") {
  const ScenarioConfig cfg = warm_band(MigrationFunction::rotation());
  const auto cells_a = sweep(cfg, {MigrationFunction::rotation(), MigrationFunction::translate_x(1)},
                             {109e-6, 437.2e-6}, 2);
  const auto cells_b = sweep(cfg, {MigrationFunction::rotation(), MigrationFunction::translate_x(1)},
                             {109e-6, 437.2e-6}, 1);
  CHECK(csv(cells_a) == csv(cells_b));
  REQUIRE(cells_a.size() == 4);
  CHECK(cells_a[0].function == MigrationFunction::rotation());
  CHECK(cells_a[1].period == 437.2e-6);
  CHECK(cells_a[2].function == MigrationFunction::translate_x(1));

  const RunSummary single = run(cfg).summary;
  const auto one = sweep(cfg, {cfg.migration_fn}, {cfg.period});
  REQUIRE(one.size() == 1);
  CHECK(csv(one) == csv({{cfg.name, cfg.migration_fn, cfg.period, single, {}}}));
}

TEST_CASE("sweep records failing cells and carries on") {
  ScenarioConfig cfg = warm_band(MigrationFunction::identity());
  cfg.grid = make_grid(4, 3);
  cfg.profile = make_profile(std::vector<double>(12, 1.0));
  cfg.initial_mapping = Mapping::identity(cfg.grid);
  cfg.sim_duration = 2e-3;
  cfg.warmup = 1e-3;
  const auto cells = sweep(cfg, {MigrationFunction::rotation(), MigrationFunction::mirror_x()}, {109e-6, -1.0});
  REQUIRE(cells.size() == 4);
  CHECK_FALSE(cells[0].summary);
  CHECK(cells[0].error.find("square") != std::string::npos);
  CHECK_FALSE(cells[1].summary);
  CHECK(cells[2].summary);
  CHECK_FALSE(cells[3].summary);
  CHECK_THROWS_AS(sweep(cfg, {}, {109e-6}), ConfigError);

  std::ostringstream text;
  write_text_summary(text, cells);
  CHECK(text.str().find("best mirror_x") != std::string::npos);
  CHECK(text.str().find("failed: warm_band rotation") != std::string::npos);
}

TEST_CASE("summary CSV golden output") {
  RunSummary s;
  s.scenario = "golden";
  s.function = MigrationFunction::translate_xy(1, 1);
  s.period = 109e-6;
  s.peak_overall = 50.1234567;
  s.peak_static_baseline = 51.5;
  s.peak_reduction = 51.5 - 50.1234567;
  s.time_avg_mean_temp = 48.25;
  s.max_spatial_spread = 2.0;
  s.throughput_penalty = 0.016;
  s.migration_count = 917;
  s.total_migration_energy = 1.5e-3;
  const std::vector<SweepCell> cells = {{"golden", s.function, s.period, s, {}},
                                        {"golden", MigrationFunction::rotation(), 437.2e-6, std::nullopt, "bad, thing"}};
  CHECK(csv(cells) ==
        "scenario,function,period_us,peak_overall_c,peak_static_baseline_c,peak_reduction_c,time_avg_mean_temp_c,"
        "max_spatial_spread_c,penalty_pct,migration_count,migration_energy_j,status\n"
        "golden,translate_xy:1:1,109.000000,50.123457,51.500000,1.376543,48.250000,2.000000,1.600000,917,"
        "1.500000e-03,ok\n"
        "golden,rotation,437.200000,,,,,,,,,\"error: bad, thing\"\n");
}

TEST_CASE("invalid configurations fail before simulating") {
  ScenarioConfig cfg = warm_band(MigrationFunction::rotation());
  cfg.sim_duration = 50e-6;
  CHECK_THROWS_AS(run(cfg), ConfigError);
  cfg = warm_band(MigrationFunction::rotation());
  cfg.grid = make_grid(4, 2);
  cfg.profile = make_profile(std::vector<double>(8, 1.0));
  cfg.initial_mapping.reset();
  CHECK_THROWS_AS(run(cfg), UnsupportedFunction);
}
