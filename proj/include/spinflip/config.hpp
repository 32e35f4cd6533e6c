#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinflip/material_model.hpp"
#include "spinflip/quadrature.hpp"
#include "spinflip/units.hpp"

namespace spinflip {

enum class SweepAxis { temperature, thickness, distance };

struct SweepSpec {
  SweepAxis axis = SweepAxis::temperature;
  double min = 0.1;
  double max = 1.4;
  int count = 60;
  bool log_spacing = true;
  /// Temperature sweeps only: min/max are T/Tc and the axis column is T/Tc.
  bool relative = true;

  /// Grid values in axis units (SI, or T/Tc when relative).
  std::vector<double> values() const;
};

std::string axis_name(SweepAxis a);

struct ScanConfig {
  TransitionSpec transition;
  double z = 50e-6;
  std::optional<double> thickness;  // empty = half-space
  double temperature = 4.155;       // K, fixed value for non-temperature sweeps
  MaterialModel material = DirtyBCS{};
  SweepSpec sweep;
  std::string output_path = "-";  // "-" = stdout
  QuadratureSettings quadrature;
  int threads = 0;  // 0 = hardware concurrency

  /// Effective "key = value" entries in fixed key order, defaults included.
  std::vector<std::pair<std::string, std::string>> entries;

  /// Tc of a superconducting model, else material.tc as configured.
  double reference_tc = 8.31;
};

/// Parses "key = value" lines ('#' starts a comment) and applies overrides
/// of the form "key=value" on top. Unknown keys, malformed values and
/// inconsistent grids raise ConfigError.
ScanConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Reads the file then calls parse_config. Unreadable file -> IoError.
ScanConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Every recognized key with its default value, in canonical order.
const std::vector<std::pair<std::string, std::string>>& config_defaults();

std::uint64_t fnv1a64(const std::string& bytes);

/// Hash of the canonical entries, leaving out output.* and run.* keys.
std::uint64_t config_hash(const ScanConfig& c);

/// Hash of constants_table_text().
std::uint64_t constants_checksum();

std::string hex64(std::uint64_t v);

}  // namespace spinflip
