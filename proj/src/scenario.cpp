// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include "nocmig/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace nocmig {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kKnownKeys = {
    "grid.nx", "grid.ny", "grid.cell_area_mm2", "grid.die_thickness_mm",
    "profile.kind", "profile.base_power_w", "profile.band_power_w", "profile.band_row", "profile.hot_power_w",
    "profile.powers_w", "profile.idle_power_w", "profile.initial_mapping",
    "migration.function", "migration.offset", "migration.dx", "migration.dy", "migration.period_us",
    "migration.state_bits", "migration.energy_per_bit_hop_j", "migration.downtime_fixed_us",
    "migration.time_per_bit_hop_s", "migration.downtime_mode", "migration.deposit_energy", "migration.stall_idle",
    "thermal.k_si_w_per_mk", "thermal.c_v_j_per_m3k", "thermal.r_vertical_k_per_w", "thermal.r_sink_k_per_w",
    "thermal.c_sink_j_per_k", "thermal.ambient_c",
    "sim.name", "sim.dt_us", "sim.duration_us", "sim.warmup_us", "sim.seed", "sim.trace_every",
    "sim.anneal_iterations", "sim.anneal_t_start", "sim.anneal_t_end",
};

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  if (!tree.get_optional<std::string>(key)) return fallback;
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError(fmt::format("scenario key '{}' has a malformed value '{}'", key, tree.get<std::string>(key)));
  }
}

template <typename T>
T require(const pt::ptree& tree, const std::string& key) {
  if (!tree.get_optional<std::string>(key)) throw ConfigError(fmt::format("scenario is missing '{}'", key));
  return get<T>(tree, key, T{});
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ConfigError(fmt::format("scenario key '{}': bad number '{}'", key, item));
    }
  }
  return out;
}

MigrationFunction read_function(const pt::ptree& tree) {
  const auto text = get<std::string>(tree, "migration.function", "identity");
  MigrationFunction fn = parse_function(text);
  using K = MigrationFunction::Kind;
  if (fn.kind == K::TranslateX) fn.dx = get<int>(tree, "migration.offset", get<int>(tree, "migration.dx", fn.dx));
  if (fn.kind == K::TranslateY) fn.dy = get<int>(tree, "migration.offset", get<int>(tree, "migration.dy", fn.dy));
  if (fn.kind == K::TranslateXY) {
    fn.dx = get<int>(tree, "migration.dx", fn.dx);
    fn.dy = get<int>(tree, "migration.dy", fn.dy);
  }
  return fn;
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  make_grid(cfg.grid.nx, cfg.grid.ny, cfg.grid.cell_area, cfg.grid.die_thickness);
  validate(cfg.profile, cfg.grid);
  if (cfg.initial_mapping && !(cfg.initial_mapping->grid() == cfg.grid)) {
    throw ConfigError("initial mapping was built for a different grid");
  }
  check_supported(cfg.migration_fn, cfg.grid);
  validate(cfg.thermal);
  validate(cfg.cost);
  validate(cfg.anneal);
  if (!(cfg.period > 0.0) || !std::isfinite(cfg.period)) {
    throw ConfigError(fmt::format("migration period must be positive, got {} s", cfg.period));
  }
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw ConfigError(fmt::format("time step must be positive, got {} s", cfg.dt));
  }
  if (!(cfg.sim_duration > 0.0) || !std::isfinite(cfg.sim_duration)) {
    throw ConfigError(fmt::format("simulation duration must be positive, got {} s", cfg.sim_duration));
  }
  if (cfg.migration_enabled() && cfg.sim_duration < cfg.period) {
    throw ConfigError(fmt::format("simulation duration {} s is shorter than the migration period {} s",
                                  cfg.sim_duration, cfg.period));
  }
  if (!(cfg.warmup >= 0.0) || !(cfg.warmup < cfg.sim_duration)) {
    throw ConfigError(fmt::format("warm-up {} s must lie in [0, duration {} s)", cfg.warmup, cfg.sim_duration));
  }
  if (cfg.trace_every < 1) throw ConfigError("trace_every must be >= 1");
}

ScenarioConfig parse_scenario(std::istream& is, const std::filesystem::path& base_dir,
                              const std::string& default_name) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("scenario parse error at line {}: {}", e.line(), e.message()));
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(fmt::format("scenario key '{}' must live in a section", section));
    for (const auto& [key, value] : body) {
      if (!kKnownKeys.count(section + "." + key)) {
        throw ConfigError(fmt::format("unknown scenario key '{}.{}'", section, key));
      }
    }
  }

  ScenarioConfig cfg;
  cfg.name = get<std::string>(tree, "sim.name", default_name);
  cfg.grid = make_grid(require<int>(tree, "grid.nx"), require<int>(tree, "grid.ny"),
                       get<double>(tree, "grid.cell_area_mm2", 4.36), get<double>(tree, "grid.die_thickness_mm", 0.5));

  const auto kind = get<std::string>(tree, "profile.kind", "explicit");
  if (kind == "warm_band") {
    cfg.profile = generate_warm_band(cfg.grid, require<double>(tree, "profile.base_power_w"),
                                     require<double>(tree, "profile.band_power_w"), require<int>(tree, "profile.band_row"))
                      .profile;
  } else if (kind == "center_hotspot") {
    cfg.profile = generate_center_hotspot(cfg.grid, require<double>(tree, "profile.base_power_w"),
                                          require<double>(tree, "profile.hot_power_w"))
                      .profile;
  } else if (kind == "explicit") {
    cfg.profile = make_profile(parse_list(require<std::string>(tree, "profile.powers_w"), "profile.powers_w"));
  } else {
    throw ConfigError(fmt::format("unknown profile kind '{}'", kind));
  }
  if (auto idle = tree.get_optional<std::string>("profile.idle_power_w")) {
    cfg.profile.idle_power = get<double>(tree, "profile.idle_power_w", 0.0);
  }

  const auto initial = get<std::string>(tree, "profile.initial_mapping", "identity");
  if (initial == "identity") {
    cfg.initial_mapping = Mapping::identity(cfg.grid);
  } else if (initial != "auto") {
    const std::filesystem::path p =
        std::filesystem::path(initial).is_absolute() ? std::filesystem::path(initial) : base_dir / initial;
    std::ifstream in(p);
    if (!in) throw ConfigError(fmt::format("cannot open mapping file {}", p.string()));
    cfg.initial_mapping = read_mapping(in, cfg.grid);
  }

  cfg.migration_fn = read_function(tree);
  cfg.period = get<double>(tree, "migration.period_us", 109.0) * 1e-6;
  cfg.cost.state_bits = get<double>(tree, "migration.state_bits", cfg.cost.state_bits);
  cfg.cost.e_bit_hop = get<double>(tree, "migration.energy_per_bit_hop_j", cfg.cost.e_bit_hop);
  cfg.cost.downtime_fixed = get<double>(tree, "migration.downtime_fixed_us", cfg.cost.downtime_fixed * 1e6) * 1e-6;
  cfg.cost.t_bit_hop = get<double>(tree, "migration.time_per_bit_hop_s", cfg.cost.t_bit_hop);
  const auto mode = get<std::string>(tree, "migration.downtime_mode", "fixed");
  if (mode == "fixed") {
    cfg.cost.mode = MigrationCostParams::DowntimeMode::Fixed;
  } else if (mode == "detailed") {
    cfg.cost.mode = MigrationCostParams::DowntimeMode::Detailed;
  } else {
    throw ConfigError(fmt::format("unknown downtime_mode '{}'", mode));
  }
  cfg.deposit_energy = get<bool>(tree, "migration.deposit_energy", cfg.deposit_energy);
  cfg.stall_idle = get<bool>(tree, "migration.stall_idle", cfg.stall_idle);

  cfg.thermal.k_si = get<double>(tree, "thermal.k_si_w_per_mk", cfg.thermal.k_si);
  cfg.thermal.c_v = get<double>(tree, "thermal.c_v_j_per_m3k", cfg.thermal.c_v);
  cfg.thermal.r_vertical = get<double>(tree, "thermal.r_vertical_k_per_w", cfg.thermal.r_vertical);
  cfg.thermal.r_sink = get<double>(tree, "thermal.r_sink_k_per_w", cfg.thermal.r_sink);
  cfg.thermal.c_sink = get<double>(tree, "thermal.c_sink_j_per_k", cfg.thermal.c_sink);
  cfg.thermal.ambient = get<double>(tree, "thermal.ambient_c", cfg.thermal.ambient);

  cfg.dt = get<double>(tree, "sim.dt_us", 1.0) * 1e-6;
  cfg.sim_duration = get<double>(tree, "sim.duration_us", cfg.sim_duration * 1e6) * 1e-6;
  cfg.warmup = get<double>(tree, "sim.warmup_us", cfg.warmup * 1e6) * 1e-6;
  cfg.seed = get<std::uint64_t>(tree, "sim.seed", cfg.seed);
  cfg.trace_every = get<int>(tree, "sim.trace_every", cfg.trace_every);
  cfg.anneal.iterations = get<int>(tree, "sim.anneal_iterations", cfg.anneal.iterations);
  cfg.anneal.t_start = get<double>(tree, "sim.anneal_t_start", cfg.anneal.t_start);
  cfg.anneal.t_end = get<double>(tree, "sim.anneal_t_end", cfg.anneal.t_end);
  cfg.anneal.seed = cfg.seed;

  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open scenario file {}", path.string()));
  return parse_scenario(in, path.parent_path(), path.stem().string());
}

}  // namespace nocmig
