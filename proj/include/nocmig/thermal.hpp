// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <cmath>
#include <map>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <fmt/format.h>

#include "nocmig/errors.hpp"
#include "nocmig/grid.hpp"

namespace nocmig {

/// Compact-model constants, SI units except temperatures (°C).
/// Die thickness and cell area come from the GridSpec.
struct ThermalParams {
  double k_si = 150.0;      // W/(m·K), lateral conductivity
  double c_v = 1.75e6;      // J/(m^3·K)
  double r_vertical = 2.0;  // K/W, block -> sink
  double r_sink = 0.5;      // K/W, sink -> ambient
  double c_sink = 10.0;     // J/K
  double ambient = 40.0;    // °C
};

inline void validate(const ThermalParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(fmt::format("thermal {} must be positive, got {}", name, v));
  };
  positive(p.k_si, "k_si");
  positive(p.c_v, "c_v");
  positive(p.r_vertical, "r_vertical");
  positive(p.r_sink, "r_sink");
  positive(p.c_sink, "c_sink");
  if (!std::isfinite(p.ambient)) throw ConfigError("thermal ambient must be finite");
}

/// Lumped RC network: one node per PE block (row-major) plus a trailing sink
/// node. G holds the node-to-node conductances with each node's conductance to
/// ambient folded onto its diagonal, so G·(T − T_amb) = P at steady state.
template <typename Scalar = double>
class ThermalNetwork {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ThermalNetwork(Matrix conductance, Vector capacitance, Vector ambient_coupling, Scalar ambient, int lateral_links = 0)
      : g_(std::move(conductance)),
        c_(std::move(capacitance)),
        amb_(std::move(ambient_coupling)),
        ambient_(ambient),
        lateral_links_(lateral_links) {
    if (g_.rows() != g_.cols() || g_.rows() < 2 || c_.size() != g_.rows() || amb_.size() != g_.rows()) {
      throw ConfigError("thermal network dimensions disagree");
    }
  }

  const Matrix& conductance() const { return g_; }
  const Vector& capacitance() const { return c_; }
  const Vector& ambient_coupling() const { return amb_; }
  Scalar ambient() const { return ambient_; }
  int nodes() const { return static_cast<int>(g_.rows()); }
  int blocks() const { return nodes() - 1; }
  int sink() const { return nodes() - 1; }
  int lateral_links() const { return lateral_links_; }

  /// Extends a block power vector with the (unpowered) sink node.
  Vector node_power(const Eigen::Ref<const Vector>& block_power) const {
    if (block_power.size() != blocks()) {
      throw ConfigError(fmt::format("power vector has {} entries for {} blocks", block_power.size(), blocks()));
    }
    Vector p = Vector::Zero(nodes());
    p.head(blocks()) = block_power;
    return p;
  }

 private:
  Matrix g_;
  Vector c_;
  Vector amb_;
  Scalar ambient_;
  int lateral_links_;
};

template <typename Scalar = double>
ThermalNetwork<Scalar> build_network(const GridSpec& grid, const ThermalParams& params) {
  validate(params);
  using Net = ThermalNetwork<Scalar>;
  const int n = grid.cells();
  const int sink = n;
  typename Net::Matrix g = Net::Matrix::Zero(n + 1, n + 1);
  typename Net::Vector amb = Net::Vector::Zero(n + 1);

  auto link = [&g](int a, int b, Scalar conductance) {
    g(a, a) += conductance;
    g(b, b) += conductance;
    g(a, b) -= conductance;
    g(b, a) -= conductance;
  };

  // Square cells: k·(thickness·side)/side.
  const Scalar thickness_m = static_cast<Scalar>(grid.die_thickness * 1e-3);
  const Scalar lateral = static_cast<Scalar>(params.k_si) * thickness_m;
  int lateral_links = 0;
  for (int y = 0; y < grid.ny; ++y) {
    for (int x = 0; x < grid.nx; ++x) {
      const int i = y * grid.nx + x;
      if (x + 1 < grid.nx) {
        link(i, i + 1, lateral);
        ++lateral_links;
      }
      if (y + 1 < grid.ny) {
        link(i, i + grid.nx, lateral);
        ++lateral_links;
      }
      link(i, sink, Scalar(1) / static_cast<Scalar>(params.r_vertical));
    }
  }
  amb(sink) = Scalar(1) / static_cast<Scalar>(params.r_sink);
  g(sink, sink) += amb(sink);

  const Scalar block_c = static_cast<Scalar>(params.c_v * grid.cell_area * 1e-6 * grid.die_thickness * 1e-3);
  typename Net::Vector cap = Net::Vector::Constant(n + 1, block_c);
  cap(sink) = static_cast<Scalar>(params.c_sink);
  return Net(std::move(g), std::move(cap), std::move(amb), static_cast<Scalar>(params.ambient), lateral_links);
}

/// Node temperatures in °C (blocks row-major, sink last).
template <typename Scalar = double>
struct ThermalState {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> temps;
  Scalar time = 0;

  auto blocks() const { return temps.head(temps.size() - 1); }
  Scalar sink() const { return temps(temps.size() - 1); }
};

template <typename Scalar>
ThermalState<Scalar> ambient_state(const ThermalNetwork<Scalar>& net) {
  return {ThermalNetwork<Scalar>::Vector::Constant(net.nodes(), net.ambient()), Scalar(0)};
}

/// Solves G·(T − T_amb) = P with a dense Cholesky factorisation.
template <typename Scalar>
ThermalState<Scalar> steady_state(const ThermalNetwork<Scalar>& net,
                                  const Eigen::Ref<const typename ThermalNetwork<Scalar>::Vector>& block_power) {
  if (!(net.ambient_coupling().sum() > Scalar(0))) {
    throw ModelError("thermal network has no path to ambient; steady state is undefined");
  }
  const Eigen::LLT<typename ThermalNetwork<Scalar>::Matrix> llt(net.conductance());
  if (llt.info() != Eigen::Success) throw ModelError("conductance matrix is not positive definite");
  typename ThermalNetwork<Scalar>::Vector rise = llt.solve(net.node_power(block_power));
  return {rise.array() + net.ambient(), Scalar(0)};
}

/// Backward-Euler integrator for C·dT/dt = P − G·(T − T_amb). Caches one
/// factorisation of (C/dt + G) per distinct step length, so each run should own
/// its stepper.
template <typename Scalar = double>
class TransientStepper {
 public:
  using Net = ThermalNetwork<Scalar>;

  explicit TransientStepper(const Net& net) : net_(net) {}

  ThermalState<Scalar> step(const ThermalState<Scalar>& state,
                            const Eigen::Ref<const typename Net::Vector>& block_power, Scalar dt) {
    if (!(dt > Scalar(0))) throw ConfigError(fmt::format("transient step must be positive, got {}", dt));
    if (state.temps.size() != net_.nodes()) throw ConfigError("thermal state does not match network");
    const auto& llt = factor(dt);
    typename Net::Vector rise = state.temps.array() - net_.ambient();
    typename Net::Vector rhs = net_.capacitance().cwiseProduct(rise) / dt + net_.node_power(block_power);
    typename Net::Vector next = llt.solve(rhs);
    return {next.array() + net_.ambient(), state.time + dt};
  }

 private:
  const Eigen::LLT<typename Net::Matrix>& factor(Scalar dt) {
    auto it = cache_.find(dt);
    if (it == cache_.end()) {
      typename Net::Matrix a = net_.conductance();
      a.diagonal() += net_.capacitance() / dt;
      it = cache_.emplace(dt, Eigen::LLT<typename Net::Matrix>(a)).first;
      if (it->second.info() != Eigen::Success) throw ModelError("transient system is not positive definite");
    }
    return it->second;
  }

  const Net& net_;
  std::map<Scalar, Eigen::LLT<typename Net::Matrix>> cache_;
};

/// One backward-Euler step with a fresh factorisation.
template <typename Scalar>
ThermalState<Scalar> step_transient(const ThermalNetwork<Scalar>& net, const ThermalState<Scalar>& state,
                                    const Eigen::Ref<const typename ThermalNetwork<Scalar>::Vector>& block_power,
                                    Scalar dt) {
  TransientStepper<Scalar> stepper(net);
  return stepper.step(state, block_power, dt);
}

/// Hottest block (sink excluded).
template <typename Scalar>
Scalar peak(const ThermalState<Scalar>& s) {
  return s.blocks().maxCoeff();
}

template <typename Scalar>
Scalar spatial_spread(const ThermalState<Scalar>& s) {
  return s.blocks().maxCoeff() - s.blocks().minCoeff();
}

template <typename Scalar>
Scalar mean_block_temp(const ThermalState<Scalar>& s) {
  return s.blocks().mean();
}

/// Heat leaving the network into ambient, W.
template <typename Scalar>
Scalar heat_to_ambient(const ThermalNetwork<Scalar>& net, const ThermalState<Scalar>& s) {
  return net.ambient_coupling().dot((s.temps.array() - net.ambient()).matrix());
}

}  // namespace nocmig
