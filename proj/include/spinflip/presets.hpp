#pragma once

#include <string>
#include <vector>

namespace spinflip {

enum class SeriesKind { scan, conductivity };

/// One curve of a figure preset: a complete config text plus the table kind.
struct PresetSeries {
  std::string name;
  SeriesKind kind;
  std::string config_text;
};

std::vector<std::string> preset_names();

/// Series of fig1..fig4; unknown names raise ConfigError.
std::vector<PresetSeries> preset_series(const std::string& name);

struct PresetRun {
  std::vector<std::string> files;
  int rows = 0;
  int failed_rows = 0;
};

/// Writes <out_dir>/<name>_<series>.csv for every series, creating out_dir
/// if needed. Overrides are applied to every series.
PresetRun run_preset(const std::string& name, const std::string& out_dir,
                     const std::vector<std::string>& overrides = {});

}  // namespace spinflip
