#include "spinflip/presets.hpp"

#include <filesystem>

#include "spinflip/config.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/scan.hpp"

namespace spinflip {

namespace {

// Temperature sweep T/Tc in [0.1, 1.4], 60 log-spaced points.
const char* kTemperatureSweep = R"(
sweep.axis = temperature
sweep.relative = true
sweep.min = 0.1
sweep.max = 1.4
sweep.count = 60
sweep.spacing = log
)";

const char* kConductivitySweep = R"(
sweep.axis = temperature
sweep.relative = true
sweep.min = 0.05
sweep.max = 1.2
sweep.count = 47
sweep.spacing = linear
)";

std::string with(const char* sweep, const std::string& body) { return std::string(sweep) + body; }

std::vector<PresetSeries> temperature_family(const std::string& thickness, bool microscopic) {
  const std::string geom = "geometry.thickness = " + thickness + "\n";
  std::vector<PresetSeries> out;
  if (microscopic) {
    out.push_back({"dirty_bcs", SeriesKind::scan, with(kTemperatureSweep, geom + "material.model = dirty_bcs\n")});
    out.push_back({"mb_clean", SeriesKind::scan, with(kTemperatureSweep, geom + "material.model = mb_clean\n")});
    out.push_back(
        {"ag_two_fluid", SeriesKind::scan, with(kTemperatureSweep, geom + "material.model = ag_two_fluid\n")});
  } else {
    out.push_back({"two_fluid", SeriesKind::scan, with(kTemperatureSweep, geom + "material.model = two_fluid\n")});
  }
  out.push_back({"gold", SeriesKind::scan, with(kTemperatureSweep, geom + "material.model = drude_bg\n")});
  return out;
}

PresetSeries free_space() {
  return {"free_space", SeriesKind::scan,
          with(kTemperatureSweep, "geometry.thickness = 0\nmaterial.model = fixed\n")};
}

void prefix_all(std::vector<PresetSeries>& v, const std::string& prefix) {
  for (auto& s : v) s.name = prefix + s.name;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

std::vector<PresetSeries> preset_series(const std::string& name) {
  std::vector<PresetSeries> out;
  if (name == "fig1") {
    // two-fluid film and bulk, gold film, free space
    auto film = temperature_family("0.9um", false);
    prefix_all(film, "film_");
    out = film;
    out.push_back({"bulk_two_fluid", SeriesKind::scan,
                   with(kTemperatureSweep, "geometry.thickness = inf\nmaterial.model = two_fluid\n")});
    out.push_back(free_space());
  } else if (name == "fig2") {
    out.push_back({"dirty_bcs", SeriesKind::conductivity, with(kConductivitySweep, "material.model = dirty_bcs\n")});
    out.push_back({"mb_clean", SeriesKind::conductivity, with(kConductivitySweep, "material.model = mb_clean\n")});
  } else if (name == "fig3") {
    auto bulk = temperature_family("inf", true);
    prefix_all(bulk, "bulk_");
    auto film = temperature_family("0.9um", true);
    prefix_all(film, "film_");
    out = bulk;
    out.insert(out.end(), film.begin(), film.end());
    out.push_back(free_space());
  } else if (name == "fig4") {
    out.push_back({"dirty_bcs", SeriesKind::scan, R"(
material.model = dirty_bcs
conditions.temperature = 0.5Tc
geometry.z = 50um
sweep.axis = thickness
sweep.min = 10nm
sweep.max = 1mm
sweep.count = 61
sweep.spacing = log
)"});
  } else {
    throw ConfigError("unknown preset '" + name + "' (fig1, fig2, fig3, fig4)");
  }
  return out;
}

PresetRun run_preset(const std::string& name, const std::string& out_dir, const std::vector<std::string>& overrides) {
  const auto series = preset_series(name);
  std::vector<ScanConfig> configs;
  for (const auto& s : series) configs.push_back(parse_config(s.config_text, overrides));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir))
    throw IoError("cannot create output directory '" + out_dir + "'");

  PresetRun run;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string path = (std::filesystem::path(out_dir) / (name + "_" + series[i].name + ".csv")).string();
    OutputSink sink(path);
    ScanTable t = series[i].kind == SeriesKind::scan ? run_scan(configs[i], "preset " + name)
                                                     : run_conductivity_table(configs[i]);
    t.header.insert(t.header.begin() + 2, "series: " + series[i].name);
    sink.write(t);
    run.files.push_back(path);
    run.rows += int(t.rows.size());
    run.failed_rows += t.failed_rows();
  }
  return run;
}

}  // namespace spinflip
