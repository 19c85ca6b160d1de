// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include "nocmig/placement.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace nocmig {
namespace {

// Portable draws: the standard distributions are implementation-defined.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_index(std::mt19937_64& rng, int n) {
  return static_cast<int>(uniform01(rng) * static_cast<double>(n));
}

}  // namespace

void validate(const AnnealConfig& cfg) {
  if (cfg.iterations < 1) throw ConfigError(fmt::format("anneal iterations must be >= 1, got {}", cfg.iterations));
  if (!(cfg.t_end > 0.0) || !(cfg.t_start > cfg.t_end)) {
    throw ConfigError(fmt::format("anneal schedule needs t_start > t_end > 0, got {} / {}", cfg.t_start, cfg.t_end));
  }
}

PeakObjective::PeakObjective(const ThermalNetwork<double>& net) : ambient_(net.ambient()) {
  if (!(net.ambient_coupling().sum() > 0.0)) throw ModelError("thermal network has no path to ambient");
  const Eigen::LLT<Eigen::MatrixXd> llt(net.conductance());
  const Eigen::MatrixXd full = llt.solve(Eigen::MatrixXd::Identity(net.nodes(), net.nodes()));
  resistance_ = full.topLeftCorner(net.blocks(), net.blocks());
}

double PeakObjective::operator()(const Eigen::VectorXd& block_power) const {
  return ambient_ + (resistance_ * block_power).maxCoeff();
}

double evaluate(const Mapping& mapping, const PowerProfile& profile, const ThermalNetwork<double>& net) {
  return peak(steady_state(net, power_vector(profile, mapping)));
}

PlacementResult anneal(const PowerProfile& profile, const Mapping& start, const ThermalNetwork<double>& net,
                       const AnnealConfig& cfg) {
  validate(cfg);
  validate(profile, start.grid());
  const int n = start.size();
  const PeakObjective objective(net);
  std::mt19937_64 rng(cfg.seed);

  Mapping current = start;
  Eigen::VectorXd power = power_vector(profile, current);
  double current_cost = objective(power);
  Mapping best = current;
  double best_cost = current_cost;
  int accepted = 0;

  const double cooling =
      cfg.iterations > 1 ? std::pow(cfg.t_end / cfg.t_start, 1.0 / static_cast<double>(cfg.iterations - 1)) : 1.0;
  double temperature = cfg.t_start;

  for (int it = 0; it < cfg.iterations && n > 1; ++it, temperature *= cooling) {
    const int a = uniform_index(rng, n);
    int b = uniform_index(rng, n - 1);
    if (b >= a) ++b;
    const double draw = uniform01(rng);

    const int ca = cell_index(start.grid(), current.at(a));
    const int cb = cell_index(start.grid(), current.at(b));
    std::swap(power(ca), power(cb));
    const double cost = objective(power);
    const double delta = cost - current_cost;
    if (delta <= 0.0 || draw < std::exp(-delta / temperature)) {
      current = current.swapped(a, b);
      current_cost = cost;
      ++accepted;
      if (cost < best_cost) {
        best = current;
        best_cost = cost;
      }
    } else {
      std::swap(power(ca), power(cb));
    }
  }

  const double start_peak = evaluate(start, profile, net);
  double best_peak = evaluate(best, profile, net);
  // The fast objective and the direct solve can disagree in the last ulp.
  if (best_peak > start_peak) {
    best = start;
    best_peak = start_peak;
  }
  return {std::move(best), best_peak, start_peak, accepted};
}

Mapping place(const PowerProfile& profile, const GridSpec& grid, const ThermalNetwork<double>& net,
              const AnnealConfig& cfg) {
  return anneal(profile, Mapping::identity(grid), net, cfg).mapping;
}

void write_mapping(std::ostream& os, const Mapping& mapping) {
  os << "workload_id,x,y\n";
  for (int w = 0; w < mapping.size(); ++w) fmt::print(os, "{},{},{}\n", w, mapping.at(w).x, mapping.at(w).y);
}

Mapping read_mapping(std::istream& is, const GridSpec& grid) {
  std::vector<Coord> assignment(static_cast<std::size_t>(grid.cells()), Coord{-1, -1});
  std::vector<bool> seen(assignment.size(), false);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.rfind("workload_id", 0) == 0)) continue;
    std::istringstream row(line);
    int w = 0, x = 0, y = 0;
    char c1 = 0, c2 = 0;
    if (!(row >> w >> c1 >> x >> c2 >> y) || c1 != ',' || c2 != ',') {
      throw ConfigError(fmt::format("mapping line {}: expected workload_id,x,y, got '{}'", lineno, line));
    }
    if (w < 0 || w >= grid.cells() || seen[static_cast<std::size_t>(w)]) {
      throw ConfigError(fmt::format("mapping line {}: bad or duplicate workload id {}", lineno, w));
    }
    seen[static_cast<std::size_t>(w)] = true;
    assignment[static_cast<std::size_t>(w)] = {x, y};
  }
  return Mapping(grid, std::move(assignment));
}

}  // namespace nocmig
