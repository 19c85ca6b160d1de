// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

// Command-line front end: run, sweep, plan, place.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "nocmig/migration.hpp"
#include "nocmig/placement.hpp"
#include "nocmig/scenario.hpp"
#include "nocmig/sim.hpp"

namespace fs = std::filesystem;
using namespace nocmig;

namespace {

struct CommonOptions {
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

ScenarioConfig load(const CommonOptions& opts) {
  ScenarioConfig cfg = load_scenario(opts.scenario);
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.anneal.seed = *opts.seed;
  }
  return cfg;
}

/// Writes through `emit` to <out>/<file>, or to stdout when no --out was given.
template <typename Emit>
void output(const std::string& out_dir, const std::string& file, Emit&& emit) {
  if (out_dir.empty()) {
    emit(std::cout);
    return;
  }
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / file;
  std::ofstream os(path);
  if (!os) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  emit(os);
  os.flush();
  if (!os) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
  std::cerr << "wrote " << path.string() << '\n';
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hotspot migration simulator for mesh networks-on-chip"};
  app.require_subcommand(1);

  CommonOptions common;
  bool trace = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", common.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", common.out_dir, "Directory for CSV outputs (default: stdout)");
    sub->add_option("--seed", common.seed, "Override the scenario seed");
  };

  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario against its static baseline");
  add_common(run_cmd);
  run_cmd->add_flag("--trace", trace, "Also emit the full temperature trace");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run every function x period combination");
  add_common(sweep_cmd);
  std::vector<std::string> functions_arg;
  std::vector<std::string> periods_arg;
  sweep_cmd->add_option("--functions", functions_arg, "Migration functions, e.g. rotation,translate_xy:1:1");
  sweep_cmd->add_option("--periods-us", periods_arg, "Migration periods in microseconds");

  auto* plan_cmd = app.add_subcommand("plan", "Print the phase schedule of one migration");
  std::string plan_fn;
  int plan_nx = 0;
  int plan_ny = 0;
  plan_cmd->add_option("fn", plan_fn, "Migration function tag")->required();
  plan_cmd->add_option("nx", plan_nx, "Mesh columns")->required();
  plan_cmd->add_option("ny", plan_ny, "Mesh rows")->required();

  auto* place_cmd = app.add_subcommand("place", "Thermally-aware annealed placement of a scenario's profile");
  add_common(place_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      ScenarioConfig cfg = load(common);
      cfg.record_trace = trace;
      const RunResult result = run(cfg);
      const std::vector<SweepCell> cells{{cfg.name, cfg.migration_fn, cfg.period, result.summary, {}}};
      output(common.out_dir, "summary.csv", [&](std::ostream& os) { write_summary_csv(os, cells); });
      if (trace) output(common.out_dir, "trace.csv", [&](std::ostream& os) { write_trace_csv(os, result.trace); });
      return 0;
    }

    if (*sweep_cmd) {
      const ScenarioConfig cfg = load(common);
      std::vector<MigrationFunction> functions;
      for (const auto& f : split_list(functions_arg)) functions.push_back(parse_function(f));
      if (functions.empty()) functions = {cfg.migration_fn};
      std::vector<double> periods;
      for (const auto& p : split_list(periods_arg)) {
        try {
          periods.push_back(std::stod(p) * 1e-6);
        } catch (const std::exception&) {
          throw ConfigError(fmt::format("bad period '{}'", p));
        }
      }
      if (periods.empty()) periods = {109e-6, 437.2e-6, 874.4e-6};
      const auto cells = sweep(cfg, functions, periods);
      output(common.out_dir, "sweep.csv", [&](std::ostream& os) { write_summary_csv(os, cells); });
      output(common.out_dir, "summary.txt", [&](std::ostream& os) { write_text_summary(os, cells); });
      for (const auto& c : cells) {
        if (!c.summary) return 2;
      }
      return 0;
    }

    if (*plan_cmd) {
      const GridSpec grid = make_grid(plan_nx, plan_ny);
      const MigrationCostParams params;
      const MigrationPlan p = plan(parse_function(plan_fn), grid, params);
      write_plan(std::cout, p);
      fmt::print(std::cerr, "{} transfers in {} phases, {} hops, {:.6e} J, downtime {:.3f} us\n",
                 p.transfer_count(), p.phases.size(), p.total_hops, p.energy, p.downtime * 1e6);
      return 0;
    }

    if (*place_cmd) {
      const ScenarioConfig cfg = load(common);
      const auto net = build_network<double>(cfg.grid, cfg.thermal);
      AnnealConfig anneal = cfg.anneal;
      anneal.seed = cfg.seed;
      const Mapping start = cfg.initial_mapping ? *cfg.initial_mapping : Mapping::identity(cfg.grid);
      const PlacementResult result = nocmig::anneal(cfg.profile, start, net, anneal);
      output(common.out_dir, "mapping.csv", [&](std::ostream& os) { write_mapping(os, result.mapping); });
      fmt::print(std::cerr, "peak {:.6f} C (start {:.6f} C)\n", result.peak, result.start_peak);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
