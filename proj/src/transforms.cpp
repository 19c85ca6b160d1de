// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#include "nocmig/transforms.hpp"

#include <array>
#include <charconv>

#include <fmt/format.h>

namespace nocmig {
namespace {

constexpr std::array<std::pair<MigrationFunction::Kind, std::string_view>, 8> kTags{{
    {MigrationFunction::Kind::Identity, "identity"},
    {MigrationFunction::Kind::Rotation, "rotation"},
    {MigrationFunction::Kind::MirrorX, "mirror_x"},
    {MigrationFunction::Kind::MirrorY, "mirror_y"},
    {MigrationFunction::Kind::MirrorXY, "mirror_xy"},
    {MigrationFunction::Kind::TranslateX, "translate_x"},
    {MigrationFunction::Kind::TranslateY, "translate_y"},
    {MigrationFunction::Kind::TranslateXY, "translate_xy"},
}};

int wrap(int v, int n) { return ((v % n) + n) % n; }

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(fmt::format("bad offset '{}' in migration function '{}'", s, whole));
  }
  return v;
}

}  // namespace

std::string_view tag(MigrationFunction::Kind kind) {
  for (const auto& [k, name] : kTags) {
    if (k == kind) return name;
  }
  return "unknown";
}

MigrationFunction parse_function(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }

  MigrationFunction fn;
  bool found = false;
  for (const auto& [k, name] : kTags) {
    if (name == parts[0]) {
      fn.kind = k;
      found = true;
    }
  }
  if (!found) throw ConfigError(fmt::format("unknown migration function '{}'", text));

  using K = MigrationFunction::Kind;
  std::size_t want = 0;
  switch (fn.kind) {
    case K::TranslateX:
      fn.dx = parts.size() > 1 ? parse_int(parts[1], text) : 1;
      want = 1;
      break;
    case K::TranslateY:
      fn.dy = parts.size() > 1 ? parse_int(parts[1], text) : 1;
      want = 1;
      break;
    case K::TranslateXY:
      if (parts.size() == 2) throw ConfigError(fmt::format("translate_xy needs both offsets: '{}'", text));
      fn.dx = parts.size() > 1 ? parse_int(parts[1], text) : 1;
      fn.dy = parts.size() > 2 ? parse_int(parts[2], text) : 1;
      want = 2;
      break;
    default:
      break;
  }
  if (parts.size() > 1 + want) throw ConfigError(fmt::format("too many offsets in '{}'", text));
  return fn;
}

std::string to_string(const MigrationFunction& fn) {
  using K = MigrationFunction::Kind;
  switch (fn.kind) {
    case K::TranslateX:
      return fmt::format("translate_x:{}", fn.dx);
    case K::TranslateY:
      return fmt::format("translate_y:{}", fn.dy);
    case K::TranslateXY:
      return fmt::format("translate_xy:{}:{}", fn.dx, fn.dy);
    default:
      return std::string(tag(fn.kind));
  }
}

void check_supported(const MigrationFunction& fn, const GridSpec& grid) {
  if (fn.kind == MigrationFunction::Kind::Rotation && !grid.square()) {
    throw UnsupportedFunction(fmt::format("rotation requires a square mesh, got {}x{}", grid.nx, grid.ny));
  }
}

Coord apply(const MigrationFunction& fn, Coord c, const GridSpec& grid) {
  check_supported(fn, grid);
  if (!in_bounds(grid, c)) {
    throw BoundsError(fmt::format("coordinate {} outside {}x{} grid", to_string(c), grid.nx, grid.ny));
  }
  using K = MigrationFunction::Kind;
  switch (fn.kind) {
    case K::Identity:
      return c;
    case K::Rotation:
      return {grid.nx - 1 - c.y, c.x};
    case K::MirrorX:
      return {grid.nx - 1 - c.x, c.y};
    case K::MirrorY:
      return {c.x, grid.ny - 1 - c.y};
    case K::MirrorXY:
      return {grid.nx - 1 - c.x, grid.ny - 1 - c.y};
    case K::TranslateX:
      return {wrap(c.x + fn.dx, grid.nx), c.y};
    case K::TranslateY:
      return {c.x, wrap(c.y + fn.dy, grid.ny)};
    case K::TranslateXY:
      return {wrap(c.x + fn.dx, grid.nx), wrap(c.y + fn.dy, grid.ny)};
  }
  return c;
}

Permutation Permutation::identity(const GridSpec& grid) {
  std::vector<int> image(static_cast<std::size_t>(grid.cells()));
  for (int i = 0; i < grid.cells(); ++i) image[static_cast<std::size_t>(i)] = i;
  return Permutation(grid, std::move(image));
}

Permutation::Permutation(const GridSpec& grid, std::vector<int> image) : grid_(grid), image_(std::move(image)) {
  if (static_cast<int>(image_.size()) != grid_.cells()) {
    throw ConfigError(fmt::format("permutation of size {} on {} cells", image_.size(), grid_.cells()));
  }
  std::vector<bool> hit(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= grid_.cells() || hit[static_cast<std::size_t>(v)]) {
      throw ConfigError("cell map is not a bijection");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  return Permutation(grid_, std::move(inv));
}

Permutation Permutation::after(const Permutation& first) const {
  if (!(first.grid_ == grid_)) throw ConfigError("composing permutations over different grids");
  std::vector<int> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    out[i] = image_[static_cast<std::size_t>(first.image_[i])];
  }
  return Permutation(grid_, std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation as_permutation(const MigrationFunction& fn, const GridSpec& grid) {
  check_supported(fn, grid);
  std::vector<int> image(static_cast<std::size_t>(grid.cells()));
  for (int i = 0; i < grid.cells(); ++i) {
    image[static_cast<std::size_t>(i)] = cell_index(grid, apply(fn, cell_coord(grid, i), grid));
  }
  return Permutation(grid, std::move(image));
}

std::vector<Coord> fixed_points(const MigrationFunction& fn, const GridSpec& grid) {
  std::vector<Coord> out;
  for (int i = 0; i < grid.cells(); ++i) {
    const Coord c = cell_coord(grid, i);
    if (apply(fn, c, grid) == c) out.push_back(c);
  }
  return out;
}

CumulativeTransform compose(const CumulativeTransform& a, const MigrationFunction& fn, const GridSpec& grid) {
  return compose(a, as_permutation(fn, grid));
}

CumulativeTransform compose(const CumulativeTransform& a, const Permutation& next) {
  return CumulativeTransform(next.after(a.composed()));
}

Coord external_address(const CumulativeTransform& ct, Coord logical) { return ct.composed()(logical); }

Coord internal_address(const CumulativeTransform& ct, Coord physical) { return ct.inverse()(physical); }

}  // namespace nocmig
