#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "spinflip/config.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/presets.hpp"
#include "spinflip/scan.hpp"
#include "spinflip/slab_rate.hpp"

using namespace spinflip;

namespace {

std::string csv(const ScanTable& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

const std::string* status_of(const std::vector<Cell>& row) { return std::get_if<std::string>(&row.back()); }

double num(const std::vector<Cell>& row, std::size_t i) { return std::get<double>(row.at(i)); }

std::size_t column(const ScanTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  FAIL("no column " << name);
  return 0;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("spinflip_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("defaults") {
  const ScanConfig c = parse_config("");
  CHECK(c.z == doctest::Approx(50e-6).epsilon(1e-15));
  CHECK(!c.thickness);
  CHECK(c.temperature == doctest::Approx(0.5 * 8.31).epsilon(1e-14));
  CHECK(std::holds_alternative<DirtyBCS>(c.material));
  CHECK(c.sweep.count == 60);
  CHECK(c.transition.spin_factor() == 0.125);
  CHECK(c.entries.size() == config_defaults().size());
}

TEST_CASE("units and comments") {
  const ScanConfig c = parse_config(R"(
# comment line
geometry.z = 12.5um   # trailing comment
geometry.thickness = 900nm
transition.nu = 1.2MHz
conditions.temperature = 3K
material.model = two_fluid
material.debye_energy = 30meV
)");
  CHECK(c.z == doctest::Approx(12.5e-6).epsilon(1e-14));
  CHECK(*c.thickness == doctest::Approx(900e-9).epsilon(1e-14));
  CHECK(c.transition.nu == doctest::Approx(1.2e6).epsilon(1e-14));
  CHECK(c.temperature == 3.0);
  REQUIRE(std::holds_alternative<TwoFluidGC>(c.material));
  CHECK(std::get<TwoFluidGC>(c.material).params.debye_energy == doctest::Approx(0.03 * 1.602176634e-19).epsilon(1e-14));
}

TEST_CASE("overrides win over the file") {
  const ScanConfig c = parse_config("geometry.z = 10um\n", {"geometry.z=20um", "material.model=mb_clean"});
  CHECK(c.z == doctest::Approx(20e-6).epsilon(1e-14));
  CHECK(std::holds_alternative<MattisBardeenClean>(c.material));
}

TEST_CASE("impurity strength auto and Eliashberg switch") {
  const ScanConfig a = parse_config("material.impurity_strength = auto\n");
  const auto& p = std::get<DirtyBCS>(a.material).params;
  CHECK(p.impurity_strength == doctest::Approx(std::numbers::pi * 39.0 / 9.0).epsilon(1e-14));
  const ScanConfig e = parse_config("material.eliashberg = true\n");
  CHECK(std::get<DirtyBCS>(e.material).params.sigma_n == doctest::Approx(2e7 / 2.1).epsilon(1e-14));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("geometry.zz = 1um\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("geometry.z = banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("geometry.z 1um\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("geometry.z = 1K\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("geometry.z = -1um\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("material.model = copper\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sweep.count = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sweep.min = 2\nsweep.max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sweep.spacing = log\nsweep.min = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"geometry.z"}), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/spinflip.cfg"), IoError);
}

TEST_CASE("sweep grids") {
  SweepSpec s;
  s.min = 1.0;
  s.max = 100.0;
  s.count = 3;
  s.log_spacing = true;
  auto v = s.values();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(v[2] == 100.0);
  s.log_spacing = false;
  v = s.values();
  CHECK(v[1] == doctest::Approx(50.5).epsilon(1e-14));
  CHECK(v[2] == 100.0);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(INFINITY) == "inf");
  for (double v : {1.0 / 3.0, 7.3413e19, 2.0e-7, 123456789.125}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("two-point scan") {
  const ScanConfig c = parse_config("sweep.count = 2\nsweep.min = 0.3\nsweep.max = 0.6\n");
  const ScanTable t = run_scan(c);
  CHECK(t.rows.size() == 2);
  CHECK(t.columns == std::vector<std::string>{"axis_value", "T_K", "H_m", "z_m", "sigma1", "sigma2", "eps_re",
                                              "eps_im", "i_par", "i_perp", "gamma_free", "gamma_slab", "occupation",
                                              "gamma_total", "tau_s", "status"});
  for (const auto& row : t.rows) {
    CHECK(row.size() == t.columns.size());
    CHECK(*status_of(row) == "ok");
    CHECK(std::get<std::string>(row[2]) == "inf");
  }
  CHECK(num(t.rows[0], 1) == doctest::Approx(0.3 * 8.31).epsilon(1e-14));
  const std::string text = csv(t);
  CHECK(text.rfind("# spinflip ", 0) == 0);
  CHECK(text.find("# config_hash: fnv1a64:") != std::string::npos);
  CHECK(text.find("# constants_checksum: fnv1a64:") != std::string::npos);
  CHECK(text.find("# config: geometry.z = 50um") != std::string::npos);
  CHECK(text.find("\naxis_value,T_K,H_m,z_m,") != std::string::npos);
}

TEST_CASE("scan rows are consistent with the rate identity") {
  const ScanConfig c = parse_config("sweep.count = 4\nmaterial.model = two_fluid\n");
  const ScanTable t = run_scan(c);
  for (const auto& row : t.rows) {
    const double gf = num(row, column(t, "gamma_free")), gs = num(row, column(t, "gamma_slab"));
    const double occ = num(row, column(t, "occupation")), gt = num(row, column(t, "gamma_total"));
    CHECK(gt == (gf + gs) * (occ + 1.0));
    CHECK(num(row, column(t, "tau_s")) == 1.0 / gt);
  }
}

TEST_CASE("thickness and distance sweeps") {
  const ScanTable h = run_scan(parse_config("sweep.axis = thickness\nsweep.min = 10nm\nsweep.max = 1mm\nsweep.count = 5\n"));
  REQUIRE(h.rows.size() == 5);
  CHECK(num(h.rows[0], 2) == doctest::Approx(10e-9).epsilon(1e-12));
  CHECK(num(h.rows[0], 0) == num(h.rows[0], 2));
  const ScanTable z = run_scan(parse_config("sweep.axis = distance\nsweep.min = 10um\nsweep.max = 1mm\nsweep.count = 3\n"));
  REQUIRE(z.rows.size() == 3);
  CHECK(num(z.rows[2], 3) == doctest::Approx(1e-3).epsilon(1e-12));
  // lifetime grows with distance
  CHECK(num(z.rows[2], 14) > num(z.rows[0], 14));
}

TEST_CASE("deterministic output independent of thread count") {
  const std::string base = "sweep.count = 7\nmaterial.model = mb_clean\n";
  const std::string a = csv(run_scan(parse_config(base, {"run.threads=1"})));
  const std::string b = csv(run_scan(parse_config(base, {"run.threads=4"})));
  const std::string c = csv(run_scan(parse_config(base, {"run.threads=4"})));
  CHECK(a == b);
  CHECK(b == c);
  CHECK(config_hash(parse_config(base, {"output.path=x.csv"})) == config_hash(parse_config(base)));
  CHECK(config_hash(parse_config(base, {"geometry.z=51um"})) != config_hash(parse_config(base)));
}

TEST_CASE("failed points keep the scan going") {
  // at 300 GHz the photon breaks pairs once 2 Delta(T) < hbar omega
  const ScanConfig c = parse_config(
      "transition.nu = 300000MHz\nmaterial.model = mb_clean\nsweep.spacing = linear\nsweep.min = 0.3\n"
      "sweep.max = 0.95\nsweep.count = 2\n");
  const ScanTable t = run_scan(c);
  REQUIRE(t.rows.size() == 2);
  CHECK(*status_of(t.rows[0]) == "ok");
  CHECK(status_of(t.rows[1])->rfind("error: ", 0) == 0);
  CHECK(t.failed_rows() == 1);
  for (const auto& row : t.rows) CHECK(row.size() == t.columns.size());
  CHECK(num(t.rows[1], 0) == 0.95);
}

TEST_CASE("conductivity table") {
  const ScanConfig c = parse_config(
      "material.model = mb_clean\nsweep.spacing = linear\nsweep.min = 0.5\nsweep.max = 1\nsweep.count = 3\n");
  const ScanTable t = run_conductivity_table(c);
  REQUIRE(t.rows.size() == 3);
  const auto& last = t.rows.back();
  CHECK(num(last, column(t, "axis_value")) == 1.0);
  CHECK(num(last, column(t, "sigma1_norm")) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(num(last, column(t, "norm1")) == 2e7);
  CHECK(num(t.rows[0], column(t, "gap_J")) > 0.0);
  CHECK_THROWS_AS(run_conductivity_table(parse_config("material.model = drude_bg\n")), ConfigError);
}

TEST_CASE("compare table") {
  const ScanConfig tf = parse_config(
      "material.model = two_fluid\nsweep.spacing = linear\nsweep.min = 0.2\nsweep.max = 0.8\nsweep.count = 4\n");
  const ScanTable t = run_compare(tf);
  for (const auto& row : t.rows) {
    CHECK(std::abs(num(row, column(t, "ratio")) - 1.0) <= 0.1);
    CHECK(std::get<std::string>(row[column(t, "formula")]) == "superconductor");
  }
  const ScanConfig vac = parse_config("material.model = fixed\nsweep.count = 3\n");
  const ScanTable v = run_compare(vac);
  for (const auto& row : v.rows) {
    CHECK(std::get<std::string>(row[column(v, "formula")]) == "vacuum");
    CHECK(num(row, column(v, "tau_exact")) == doctest::Approx(num(row, column(v, "tau_analytic"))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(run_compare(parse_config("geometry.thickness = 1um\n")), ConfigError);
}

TEST_CASE("gap table") {
  const ScanTable t =
      run_gap_table(parse_config("sweep.spacing = linear\nsweep.min = 0.1\nsweep.max = 1.2\nsweep.count = 12\n"));
  CHECK(num(t.rows[0], column(t, "gap_meV")) == doctest::Approx(1.264).epsilon(1e-3));
  CHECK(num(t.rows.back(), column(t, "gap_J")) == 0.0);
}

TEST_CASE("unwritable output fails before computing") {
  CHECK_THROWS_AS(OutputSink("/nonexistent/dir/out.csv"), IoError);
}

TEST_CASE("presets") {
  CHECK(preset_names() == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4"});
  for (const auto& n : preset_names()) {
    for (const auto& s : preset_series(n)) CHECK_NOTHROW(parse_config(s.config_text));
  }
  CHECK_THROWS_AS(preset_series("fig9"), ConfigError);
  const auto dir = scratch("preset");
  const PresetRun r = run_preset("fig2", dir.string(), {"sweep.count=3"});
  CHECK(r.files.size() == 2);
  CHECK(r.rows == 6);
  CHECK(r.failed_rows == 0);
  const std::string text = slurp(dir / "fig2_dirty_bcs.csv");
  CHECK(text.find("# series: dirty_bcs") != std::string::npos);
  std::filesystem::remove_all(dir);
}

#ifdef SPINFLIP_CLI
TEST_CASE("command line runs are reproducible") {
  const auto dir = scratch("cli");
  const std::string cli = SPINFLIP_CLI;
  const auto a = dir / "a.csv", b = dir / "b.csv";
  const std::string cmd = "\"" + cli + "\" scan --override sweep.count=3 --override material.model=two_fluid --output ";
  REQUIRE(std::system((cmd + "\"" + a.string() + "\"").c_str()) == 0);
  REQUIRE(std::system((cmd + "\"" + b.string() + "\"").c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("# command: scan") != std::string::npos);
  std::filesystem::remove_all(dir);
}
#endif
