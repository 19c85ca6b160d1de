// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nocmig/grid.hpp"

namespace nocmig {

/// A rigid transform of the mesh plane. Translations wrap modulo the mesh
/// dimension; rotation is a quarter turn and requires a square mesh.
struct MigrationFunction {
  enum class Kind { Identity, Rotation, MirrorX, MirrorY, MirrorXY, TranslateX, TranslateY, TranslateXY };

  Kind kind = Kind::Identity;
  int dx = 0;
  int dy = 0;

  static MigrationFunction identity() { return {}; }
  static MigrationFunction rotation() { return {Kind::Rotation}; }
  static MigrationFunction mirror_x() { return {Kind::MirrorX}; }
  static MigrationFunction mirror_y() { return {Kind::MirrorY}; }
  static MigrationFunction mirror_xy() { return {Kind::MirrorXY}; }
  static MigrationFunction translate_x(int offset) { return {Kind::TranslateX, offset, 0}; }
  static MigrationFunction translate_y(int offset) { return {Kind::TranslateY, 0, offset}; }
  static MigrationFunction translate_xy(int dx, int dy) { return {Kind::TranslateXY, dx, dy}; }

  friend bool operator==(const MigrationFunction&, const MigrationFunction&) = default;
};

/// Scenario/CLI tag: identity, rotation, mirror_x, mirror_y, mirror_xy,
/// translate_x, translate_y, translate_xy.
std::string_view tag(MigrationFunction::Kind kind);

/// Parses a tag, optionally with offsets: "translate_x:2", "translate_xy:1:1".
/// Translations without offsets default to 1 cell.
MigrationFunction parse_function(std::string_view text);

/// Inverse of parse_function, e.g. "translate_xy:1:1" or "rotation".
std::string to_string(const MigrationFunction& fn);

/// Throws UnsupportedFunction when fn is undefined on grid.
void check_supported(const MigrationFunction& fn, const GridSpec& grid);

Coord apply(const MigrationFunction& fn, Coord c, const GridSpec& grid);

/// A bijection over the cells of one grid, stored as row-major image indices.
class Permutation {
 public:
  static Permutation identity(const GridSpec& grid);

  /// Throws ConfigError unless `image` is a bijection on [0, cells).
  Permutation(const GridSpec& grid, std::vector<int> image);

  const GridSpec& grid() const { return grid_; }
  Coord operator()(Coord c) const { return cell_coord(grid_, image_[static_cast<std::size_t>(cell_index(grid_, c))]); }
  int operator()(int cell) const { return image_.at(static_cast<std::size_t>(cell)); }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const;
  /// (this ∘ first)(c) = this(first(c)).
  Permutation after(const Permutation& first) const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  GridSpec grid_;
  std::vector<int> image_;
};

Permutation as_permutation(const MigrationFunction& fn, const GridSpec& grid);

/// Cells with apply(fn, c) == c, in row-major order.
std::vector<Coord> fixed_points(const MigrationFunction& fn, const GridSpec& grid);

/// Product of all migrations applied since start; maps a workload's logical
/// (start-of-run) position to its current physical PE.
class CumulativeTransform {
 public:
  explicit CumulativeTransform(const GridSpec& grid)
      : composed_(Permutation::identity(grid)), inverse_(Permutation::identity(grid)) {}
  explicit CumulativeTransform(Permutation composed)
      : composed_(std::move(composed)), inverse_(composed_.inverse()) {}

  const Permutation& composed() const { return composed_; }
  const Permutation& inverse() const { return inverse_; }

 private:
  Permutation composed_;
  Permutation inverse_;
};

/// fn ∘ a.composed
CumulativeTransform compose(const CumulativeTransform& a, const MigrationFunction& fn, const GridSpec& grid);
CumulativeTransform compose(const CumulativeTransform& a, const Permutation& next);

/// I/O migration unit: logical destination of an incoming packet -> current PE.
Coord external_address(const CumulativeTransform& ct, Coord logical);
/// Current PE of an outgoing packet's source -> logical address seen off-chip.
Coord internal_address(const CumulativeTransform& ct, Coord physical);

}  // namespace nocmig
