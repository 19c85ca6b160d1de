// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 nocmig authors

#pragma once

#include <stdexcept>
#include <string>

namespace nocmig {

/// Invalid geometry, profile, scenario, or mismatched inputs.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A migration function that is not defined on the given grid (rotation on nx != ny).
class UnsupportedFunction : public std::domain_error {
 public:
  explicit UnsupportedFunction(const std::string& what) : std::domain_error(what) {}
};

class BoundsError : public std::out_of_range {
 public:
  explicit BoundsError(const std::string& what) : std::out_of_range(what) {}
};

/// The thermal network cannot be solved (no path to ambient).
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nocmig
