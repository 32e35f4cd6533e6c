// Command-line front end: rate scans, conductivity and gap tables,
// analytic comparisons and the figure presets.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinflip/config.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/presets.hpp"
#include "spinflip/scan.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kAllFailed = 3, kIo = 4 };

struct TableOptions {
  std::string config;
  std::string output;
  std::vector<std::string> overrides;
};

void add_table_options(CLI::App* cmd, TableOptions& o) {
  cmd->add_option("--config", o.config, "Config file (key = value lines); defaults apply when omitted");
  cmd->add_option("--output", o.output, "CSV output path, '-' for stdout (overrides output.path)");
  cmd->add_option("--override", o.overrides, "key=value applied after the config file")->take_all();
}

spinflip::ScanConfig build_config(const TableOptions& o) {
  std::vector<std::string> overrides = o.overrides;
  if (!o.output.empty()) overrides.push_back("output.path=" + o.output);
  if (o.config.empty()) return spinflip::parse_config("", overrides);
  return spinflip::load_config(o.config, overrides);
}

int finish(const spinflip::ScanTable& t) {
  const int failed = t.failed_rows();
  if (failed > 0) std::cerr << "warning: " << failed << " of " << t.rows.size() << " points failed\n";
  if (!t.rows.empty() && failed == int(t.rows.size())) return kAllFailed;
  return kOk;
}

template <class Run>
int run_table(const TableOptions& o, Run&& run) {
  const spinflip::ScanConfig c = build_config(o);
  spinflip::OutputSink sink(c.output_path);
  const spinflip::ScanTable t = run(c);
  sink.write(t);
  return finish(t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-flip lifetimes of trapped atoms near (super)conducting slabs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SPINFLIP_VERSION));

  TableOptions scan_opts, cond_opts, compare_opts, gap_opts;
  auto* scan = app.add_subcommand("scan", "Lifetime sweep over temperature, thickness or distance");
  add_table_options(scan, scan_opts);
  auto* cond = app.add_subcommand("conductivity", "Conductivity of a superconducting model versus temperature");
  add_table_options(cond, cond_opts);
  auto* compare = app.add_subcommand("compare", "Exact lifetime against the closed-form approximations");
  add_table_options(compare, compare_opts);
  auto* gap = app.add_subcommand("gap", "Energy gap versus temperature");
  add_table_options(gap, gap_opts);

  std::string preset_name;
  std::string preset_dir = ".";
  std::vector<std::string> preset_overrides;
  auto* preset = app.add_subcommand("preset", "Reproduce a figure: one CSV per curve in the output directory");
  preset->add_option("name", preset_name, "fig1, fig2, fig3 or fig4")
      ->required()
      ->check(CLI::IsMember(spinflip::preset_names()));
  preset->add_option("--output", preset_dir, "Output directory (created if missing)");
  preset->add_option("--override", preset_overrides, "key=value applied to every series")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*scan) return run_table(scan_opts, [](const auto& c) { return spinflip::run_scan(c); });
    if (*cond) return run_table(cond_opts, [](const auto& c) { return spinflip::run_conductivity_table(c); });
    if (*compare) return run_table(compare_opts, [](const auto& c) { return spinflip::run_compare(c); });
    if (*gap) return run_table(gap_opts, [](const auto& c) { return spinflip::run_gap_table(c); });
    if (*preset) {
      const auto run = spinflip::run_preset(preset_name, preset_dir, preset_overrides);
      for (const auto& f : run.files) std::cout << f << '\n';
      if (run.failed_rows > 0) std::cerr << "warning: " << run.failed_rows << " of " << run.rows << " points failed\n";
      if (run.rows > 0 && run.failed_rows == run.rows) return kAllFailed;
      return kOk;
    }
  } catch (const spinflip::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const spinflip::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
