// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

// Exit criteria for the simulator. Each check prints one PASS/FAIL line with
// its wall time; a check that overruns its time budget fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nocmig/migration.hpp"
#include "nocmig/placement.hpp"
#include "nocmig/sim.hpp"
#include "nocmig/thermal.hpp"
#include "nocmig/transforms.hpp"

using namespace nocmig;

namespace {

struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Check&)> body;
};

std::vector<MigrationFunction> every_function(const GridSpec& g) {
  std::vector<MigrationFunction> fns = {MigrationFunction::identity(), MigrationFunction::mirror_x(),
                                        MigrationFunction::mirror_y(), MigrationFunction::mirror_xy()};
  for (int o = 0; o < std::max(g.nx, g.ny) + 1; ++o) {
    fns.push_back(MigrationFunction::translate_x(o));
    fns.push_back(MigrationFunction::translate_y(o));
    fns.push_back(MigrationFunction::translate_xy(o, o + 1));
  }
  if (g.square()) fns.push_back(MigrationFunction::rotation());
  return fns;
}

Eigen::VectorXd permuted(const Eigen::VectorXd& v, const Permutation& perm) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < v.size(); ++i) out(perm(i)) = v(i);
  return out;
}

double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

ScenarioConfig warm_band_4x4(MigrationFunction fn) {
  ScenarioConfig cfg;
  cfg.name = "warm_band_4x4";
  cfg.grid = make_grid(4, 4);
  auto gen = generate_warm_band(cfg.grid, 0.5, 2.0, 1);
  cfg.profile = gen.profile;
  cfg.initial_mapping = gen.mapping;
  cfg.migration_fn = fn;
  cfg.period = 109e-6;
  return cfg;
}

ScenarioConfig center_hotspot_5x5(MigrationFunction fn) {
  ScenarioConfig cfg;
  cfg.name = "center_hotspot_5x5";
  cfg.grid = make_grid(5, 5);
  auto gen = generate_center_hotspot(cfg.grid, 0.5, 3.0);
  cfg.profile = gen.profile;
  cfg.initial_mapping = gen.mapping;
  cfg.migration_fn = fn;
  cfg.period = 109e-6;
  return cfg;
}

void transform_conformance(Check& c) {
  for (int n : {4, 5}) {
    const GridSpec g = make_grid(n, n);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        c.expect(apply(MigrationFunction::rotation(), {x, y}, g) == Coord{n - 1 - y, x}, "rotation table");
        c.expect(apply(MigrationFunction::mirror_x(), {x, y}, g) == Coord{n - 1 - x, y}, "mirror table");
        for (int o = -n; o <= 2 * n; ++o) {
          c.expect(apply(MigrationFunction::translate_x(o), {x, y}, g) == Coord{((x + o) % n + n) % n, y},
                   "translation table");
        }
      }
    }
  }
  int checked = 0;
  for (int nx = 1; nx <= 8; ++nx) {
    for (int ny = 1; ny <= 8; ++ny) {
      const GridSpec g = make_grid(nx, ny);
      for (const auto& fn : every_function(g)) {
        std::vector<bool> hit(static_cast<std::size_t>(g.cells()), false);
        for (int i = 0; i < g.cells(); ++i) hit[static_cast<std::size_t>(cell_index(g, apply(fn, cell_coord(g, i), g)))] = true;
        for (bool h : hit) c.expect(h, fmt::format("{} not a bijection on {}x{}", to_string(fn), nx, ny));
        ++checked;
      }
    }
  }
  c.notes.push_back(fmt::format("{} function/grid pairs", checked));
}

void center_fixed_point(Check& c) {
  const GridSpec g = make_grid(5, 5);
  c.expect(fixed_points(MigrationFunction::rotation(), g) == std::vector<Coord>{{2, 2}}, "rotation fixed set");
  const auto mxy = fixed_points(MigrationFunction::mirror_xy(), g);
  c.expect(std::find(mxy.begin(), mxy.end(), Coord{2, 2}) != mxy.end(), "mirror_xy keeps the centre");
}

void thermal_properties(Check& c) {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  double worst_linear = 0.0;
  double worst_conv = 0.0;
  for (int n : {4, 5}) {
    const GridSpec g = make_grid(n, n);
    const auto net = build_network(g, ThermalParams{});
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd p1(g.cells()), p2(g.cells());
      for (int i = 0; i < g.cells(); ++i) {
        p1(i) = u(rng);
        p2(i) = u(rng);
      }
      const double a = 1.7, b = 0.4;
      const Eigen::VectorXd r1 = steady_state(net, p1).temps.array() - 40.0;
      const Eigen::VectorXd r2 = steady_state(net, p2).temps.array() - 40.0;
      const Eigen::VectorXd r = steady_state(net, Eigen::VectorXd(a * p1 + b * p2)).temps.array() - 40.0;
      const double sup = rel_err(r, a * r1 + b * r2);
      worst_linear = std::max(worst_linear, sup);
      c.expect(sup <= 1e-9, "superposition");

      const auto s1 = steady_state(net, p1);
      const double cons = std::abs(heat_to_ambient(net, s1) - p1.sum()) / p1.sum();
      worst_linear = std::max(worst_linear, cons);
      c.expect(cons <= 1e-9, "energy conservation");

      for (const auto& fn : {MigrationFunction::rotation(), MigrationFunction::mirror_x(),
                             MigrationFunction::mirror_y(), MigrationFunction::mirror_xy()}) {
        const Permutation perm = as_permutation(fn, g);
        const double sym =
            rel_err(steady_state(net, permuted(p1, perm)).blocks(), permuted(Eigen::VectorXd(s1.blocks()), perm));
        worst_linear = std::max(worst_linear, sym);
        c.expect(sym <= 1e-9, "symmetry equivariance");
      }
    }

    Eigen::VectorXd p(g.cells());
    for (int i = 0; i < g.cells(); ++i) p(i) = u(rng);
    const auto target = steady_state(net, p);
    TransientStepper<double> stepper(net);
    auto state = ambient_state(net);
    double residual = (state.temps - target.temps).cwiseAbs().maxCoeff();
    bool monotone = true;
    for (int k = 0; k < 20000 && residual > 1e-6; ++k) {
      state = stepper.step(state, p, 0.05);
      const double next = (state.temps - target.temps).cwiseAbs().maxCoeff();
      monotone = monotone && next <= residual;
      residual = next;
    }
    worst_conv = std::max(worst_conv, residual);
    c.expect(residual <= 1e-6, fmt::format("transient convergence on {}x{}", n, n));
    c.expect(monotone, "monotone transient residual");
  }
  c.notes.push_back(fmt::format("worst linear rel err {:.2e}, final residual {:.2e} C", worst_linear, worst_conv));
}

void hop_ordering(Check& c) {
  const GridSpec g = make_grid(4, 4);
  const MigrationCostParams params;
  auto brute = [&](const MigrationFunction& fn) {
    int sum = 0;
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 4; ++x) {
        int nx = x, ny = y;
        switch (fn.kind) {
          case MigrationFunction::Kind::Rotation: nx = 3 - y; ny = x; break;
          case MigrationFunction::Kind::MirrorX: nx = 3 - x; break;
          case MigrationFunction::Kind::TranslateX: nx = (x + fn.dx) % 4; break;
          default: break;
        }
        sum += std::abs(nx - x) + std::abs(ny - y);
      }
    }
    return sum;
  };
  const int rot = plan(MigrationFunction::rotation(), g, params).total_hops;
  const int mx = plan(MigrationFunction::mirror_x(), g, params).total_hops;
  const int tx = plan(MigrationFunction::translate_x(1), g, params).total_hops;
  c.expect(rot == 40 && rot == brute(MigrationFunction::rotation()), fmt::format("rotation hops {}", rot));
  c.expect(mx == 32 && mx == brute(MigrationFunction::mirror_x()), fmt::format("mirror hops {}", mx));
  c.expect(tx == 24 && tx == brute(MigrationFunction::translate_x(1)), fmt::format("translate hops {}", tx));
  c.expect(rot > mx && mx > tx, "energy ordering");
  c.notes.push_back(fmt::format("hops {}/{}/{}", rot, mx, tx));
}

void phase_validity(Check& c) {
  const MigrationCostParams params;
  std::size_t plans = 0;
  for (int nx = 1; nx <= 8; ++nx) {
    for (int ny = 1; ny <= 8; ++ny) {
      const GridSpec g = make_grid(nx, ny);
      for (const auto& fn : every_function(g)) {
        const MigrationPlan p = plan(fn, g, params);
        ++plans;
        std::set<Coord> srcs;
        for (const auto& phase : p.phases) {
          for (std::size_t i = 0; i < phase.size(); ++i) {
            const std::set<Link> li(phase[i].route.begin(), phase[i].route.end());
            for (std::size_t j = i + 1; j < phase.size(); ++j) {
              for (const Link& l : phase[j].route) c.expect(!li.count(l), "shared directed link within a phase");
            }
            c.expect(srcs.insert(phase[i].src).second, "workload moved twice");
            c.expect(apply(fn, phase[i].src, g) != phase[i].src, "fixed point transferred");
          }
        }
        c.expect(srcs.size() + fixed_points(fn, g).size() == static_cast<std::size_t>(g.cells()),
                 fmt::format("coverage {} on {}x{}", to_string(fn), nx, ny));
      }
    }
  }
  c.notes.push_back(fmt::format("{} plans", plans));
}

void penalties(Check& c) {
  const double periods_us[] = {109.0, 437.2, 874.4};
  const double expected_pct[] = {1.600, 0.399, 0.199};
  std::string got;
  for (int i = 0; i < 3; ++i) {
    ScenarioConfig cfg = warm_band_4x4(MigrationFunction::translate_xy(1, 1));
    cfg.period = periods_us[i] * 1e-6;
    cfg.sim_duration = 1e-3;
    cfg.warmup = 0.0;
    const double pct = run(cfg).summary.throughput_penalty * 100.0;
    c.expect(std::abs(pct - expected_pct[i]) <= 0.005,
             fmt::format("penalty {:.4f} % at {} us", pct, periods_us[i]));
    got += fmt::format("{}{:.4f}%", i ? ", " : "", pct);
  }
  c.notes.push_back(got);
}

void warm_band(Check& c) {
  const auto fns = {MigrationFunction::rotation(), MigrationFunction::mirror_xy(), MigrationFunction::translate_x(1),
                    MigrationFunction::translate_xy(1, 1)};
  std::vector<double> red;
  for (const auto& fn : fns) red.push_back(run(warm_band_4x4(fn)).summary.peak_reduction);
  c.expect(red[2] < red[0], "translate_x below rotation");
  c.expect(red[2] < red[1], "translate_x below mirror_xy");
  c.expect(red[2] < red[3], "translate_x below translate_xy");
  c.expect(red[3] > 0.0, "translate_xy positive");
  c.notes.push_back(fmt::format("reductions C: rot {:.4f}, mxy {:.4f}, tx {:.4f}, txy {:.4f}", red[0], red[1], red[2],
                                red[3]));
}

void center_hotspot(Check& c) {
  const double rot = run(center_hotspot_5x5(MigrationFunction::rotation())).summary.peak_reduction;
  const double mxy = run(center_hotspot_5x5(MigrationFunction::mirror_xy())).summary.peak_reduction;
  const double txy = run(center_hotspot_5x5(MigrationFunction::translate_xy(1, 1))).summary.peak_reduction;
  c.expect(std::abs(rot) <= 0.05, "rotation within 0.05 C of zero");
  c.expect(std::abs(mxy) <= 0.05, "mirror_xy within 0.05 C of zero");
  c.expect(txy > 0.0, "translate_xy positive");
  c.notes.push_back(fmt::format("reductions C: rot {:.4f}, mxy {:.4f}, txy {:.4f}", rot, mxy, txy));
}

void placement_oracle(Check& c) {
  const GridSpec g = make_grid(3, 3);
  const auto net = build_network(g, ThermalParams{});
  std::vector<double> power(9, 0.5);
  power[0] = 3.0;
  const PowerProfile profile = make_profile(power);
  int best_cell = -1;
  double best = INFINITY;
  for (int cell = 0; cell < 9; ++cell) {
    const double t = evaluate(Mapping::identity(g).swapped(0, cell), profile, net);
    if (t < best) {
      best = t;
      best_cell = cell;
    }
  }
  const Mapping placed = place(profile, g, net, AnnealConfig{});
  c.expect(cell_coord(g, best_cell) == Coord{1, 1}, "exhaustive argmin is the centre");
  c.expect(placed.at(0) == cell_coord(g, best_cell), "annealer matches exhaustive argmin");
  c.notes.push_back(fmt::format("hot workload at {}", to_string(placed.at(0))));
}

void determinism(Check& c) {
  auto render = [](const std::vector<SweepCell>& cells) {
    std::ostringstream os;
    write_summary_csv(os, cells);
    return os.str();
  };
  ScenarioConfig cfg = warm_band_4x4(MigrationFunction::rotation());
  cfg.initial_mapping.reset();  // exercise the seeded annealer too
  cfg.seed = 17;
  cfg.anneal.iterations = 5000;
  cfg.sim_duration = 20e-3;
  cfg.warmup = 10e-3;
  const auto runs = [&] {
    const RunResult r = run(cfg);
    return render({{cfg.name, cfg.migration_fn, cfg.period, r.summary, {}}});
  };
  c.expect(runs() == runs(), "run CSV differs between repeats");
  const std::vector<MigrationFunction> fns = {MigrationFunction::mirror_xy(), MigrationFunction::translate_xy(1, 1)};
  const std::vector<double> periods = {109e-6, 874.4e-6};
  c.expect(render(sweep(cfg, fns, periods, 1)) == render(sweep(cfg, fns, periods, 4)),
           "sweep CSV differs between repeats");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "transform conformance", 1.0, transform_conformance},
      {2, "centre fixed point", 1.0, center_fixed_point},
      {3, "thermal solver properties", 10.0, thermal_properties},
      {4, "hop-energy ordering", 1.0, hop_ordering},
      {5, "phase schedule validity", 5.0, phase_validity},
      {6, "throughput penalties", 1.0, penalties},
      {7, "warm-band migration ordering", 60.0, warm_band},
      {8, "centre-hotspot blindness", 60.0, center_hotspot},
      {9, "placement oracle", 10.0, placement_oracle},
      {10, "determinism", 60.0, determinism},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_s) check.failures.push_back(fmt::format("took {:.2f} s, budget {:.0f} s", secs, cr.budget_s));
    const bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    std::string detail;
    for (const auto& n : check.notes) detail += "; " + n;
    std::cout << fmt::format("[{}] {:2d} {} ({:.3f} s{})\n", ok ? "PASS" : "FAIL", cr.id, cr.name, secs, detail);
    for (std::size_t i = 0; i < check.failures.size() && i < 5; ++i) std::cout << "       " << check.failures[i] << '\n';
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                           criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
