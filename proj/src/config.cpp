#include "spinflip/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

const std::vector<std::pair<std::string, std::string>> kDefaults = {
    {"transition.nu", "560kHz"},
    {"transition.sx2", "0"},
    {"transition.sy2", "0.0625"},
    {"transition.sz2", "0.0625"},
    {"geometry.z", "50um"},
    {"geometry.thickness", "inf"},
    {"conditions.temperature", "0.5Tc"},
    {"material.model", "dirty_bcs"},
    {"material.tc", "8.31K"},
    {"material.london_depth", "35nm"},
    {"material.sigma_n", "2e7"},
    {"material.debye_energy", "25meV"},
    {"material.impurity_strength", "13.61"},
    {"material.coherence_length", "39nm"},
    {"material.mean_free_path", "9nm"},
    {"material.zn", "2.1"},
    {"material.eliashberg", "false"},
    {"material.theta", "175K"},
    {"material.plasma_energy", "9eV"},
    {"material.bg_prefactor", "0.0847eV"},
    {"material.sigma1", "0"},
    {"material.sigma2", "0"},
    {"sweep.axis", "temperature"},
    {"sweep.min", "0.1"},
    {"sweep.max", "1.4"},
    {"sweep.count", "60"},
    {"sweep.spacing", "log"},
    {"sweep.relative", "true"},
    {"output.path", "-"},
    {"quadrature.rel_tol", "1e-8"},
    {"quadrature.abs_tol", "0"},
    {"quadrature.max_subdivisions", "2000"},
    {"quadrature.tail_tol", "1e-10"},
    {"run.threads", "0"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

enum class Kind { plain, length, energy, temperature, frequency };

struct Quantity {
  double value;
  bool relative_tc;  // "Tc" suffix
  bool has_unit = true;
};

Quantity parse_quantity(const std::string& key, const std::string& text, Kind kind) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || !std::isfinite(v)) throw ConfigError(key + ": cannot parse number from '" + text + "'");
  const std::string unit = trim(std::string(res.ptr, last));
  auto bad = [&] { return ConfigError(key + ": unit '" + unit + "' not allowed here"); };
  if (unit.empty()) return {v, false, false};
  switch (kind) {
    case Kind::plain:
      throw bad();
    case Kind::length:
      if (unit == "m") return {v, false};
      if (unit == "mm") return {v * 1e-3, false};
      if (unit == "um" || unit == "\xC2\xB5m") return {v * 1e-6, false};
      if (unit == "nm") return {v * 1e-9, false};
      throw bad();
    case Kind::energy:
      if (unit == "J") return {v, false};
      if (unit == "eV") return {v * kConstants.eV, false};
      if (unit == "meV") return {v * 1e-3 * kConstants.eV, false};
      throw bad();
    case Kind::temperature:
      if (unit == "K") return {v, false};
      if (unit == "Tc") return {v, true};
      throw bad();
    case Kind::frequency:
      if (unit == "Hz") return {v, false};
      if (unit == "kHz") return {v * 1e3, false};
      if (unit == "MHz") return {v * 1e6, false};
      throw bad();
  }
  throw bad();
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

void set_entry(std::map<std::string, std::string>& values, const std::string& key, const std::string& value,
               const std::string& where) {
  if (!values.count(key)) throw ConfigError(where + "unknown key '" + key + "'");
  if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
  values[key] = value;
}

void split_assignment(const std::string& line, std::string& key, std::string& value, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
  key = trim(line.substr(0, eq));
  value = trim(line.substr(eq + 1));
}

}  // namespace

std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::temperature:
      return "temperature";
    case SweepAxis::thickness:
      return "thickness";
    case SweepAxis::distance:
      return "distance";
  }
  return "?";
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double f = double(i) / (count - 1);
    if (i == 0) {
      out[i] = min;
    } else if (i == count - 1) {
      out[i] = max;
    } else if (log_spacing) {
      out[i] = std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    } else {
      out[i] = min + f * (max - min);
    }
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>>& config_defaults() { return kDefaults; }

ScanConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> values(kDefaults.begin(), kDefaults.end());

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::string key, value;
    split_assignment(line, key, value, where);
    set_entry(values, key, value, where);
  }
  for (const auto& o : overrides) {
    const std::string where = "override '" + o + "': ";
    std::string key, value;
    split_assignment(o, key, value, where);
    set_entry(values, key, value, where);
  }

  ScanConfig c;
  for (const auto& [k, _] : kDefaults) c.entries.emplace_back(k, values.at(k));
  auto get = [&](const char* k) -> const std::string& { return values.at(k); };
  auto num = [&](const char* k, Kind kind) { return parse_quantity(k, get(k), kind).value; };

  c.transition.nu = num("transition.nu", Kind::frequency);
  c.transition.sx2 = num("transition.sx2", Kind::plain);
  c.transition.sy2 = num("transition.sy2", Kind::plain);
  c.transition.sz2 = num("transition.sz2", Kind::plain);

  SuperconductorParams sc;
  sc.tc = num("material.tc", Kind::temperature);
  sc.london_depth = num("material.london_depth", Kind::length);
  sc.sigma_n = num("material.sigma_n", Kind::plain);
  sc.debye_energy = num("material.debye_energy", Kind::energy);
  sc.coherence_length = num("material.coherence_length", Kind::length);
  sc.mean_free_path = num("material.mean_free_path", Kind::length);
  sc.zn = num("material.zn", Kind::plain);
  if (get("material.impurity_strength") == "auto") {
    sc.impurity_strength = std::numbers::pi * sc.coherence_length / sc.mean_free_path;
  } else {
    sc.impurity_strength = num("material.impurity_strength", Kind::plain);
  }
  c.reference_tc = sc.tc;

  DrudeMetalParams metal;
  metal.theta = num("material.theta", Kind::temperature);
  metal.plasma_energy = num("material.plasma_energy", Kind::energy);
  metal.bg_prefactor = num("material.bg_prefactor", Kind::energy);

  try {
    c.transition.validate();
    sc.validate();
    metal.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (parse_bool("material.eliashberg", get("material.eliashberg"))) sc = eliashberg_rescale(sc);

  const std::string& model = get("material.model");
  if (model == "two_fluid") {
    c.material = TwoFluidGC{sc};
  } else if (model == "ag_two_fluid") {
    c.material = AGTwoFluid{sc};
  } else if (model == "mb_clean") {
    c.material = MattisBardeenClean{sc};
  } else if (model == "dirty_bcs") {
    c.material = DirtyBCS{sc};
  } else if (model == "drude_bg") {
    c.material = DrudeBG{metal};
  } else if (model == "fixed") {
    const double s1 = num("material.sigma1", Kind::plain);
    const double s2 = num("material.sigma2", Kind::plain);
    if (s1 < 0.0) throw ConfigError("material.sigma1 must be non-negative");
    c.material = FixedConductivity{{s1, s2}};
  } else {
    throw ConfigError("material.model: unknown model '" + model +
                      "' (two_fluid, ag_two_fluid, mb_clean, dirty_bcs, drude_bg, fixed)");
  }

  c.z = num("geometry.z", Kind::length);
  if (!(c.z > 0.0)) throw ConfigError("geometry.z must be positive");
  const std::string& h = get("geometry.thickness");
  if (h == "inf" || h == "half-space") {
    c.thickness.reset();
  } else {
    c.thickness = num("geometry.thickness", Kind::length);
    if (*c.thickness < 0.0) throw ConfigError("geometry.thickness must be non-negative");
  }

  const Quantity t = parse_quantity("conditions.temperature", get("conditions.temperature"), Kind::temperature);
  c.temperature = t.relative_tc ? t.value * sc.tc : t.value;
  if (!(c.temperature >= 0.0)) throw ConfigError("conditions.temperature must be non-negative");

  const std::string& axis = get("sweep.axis");
  if (axis == "temperature") {
    c.sweep.axis = SweepAxis::temperature;
  } else if (axis == "thickness") {
    c.sweep.axis = SweepAxis::thickness;
  } else if (axis == "distance") {
    c.sweep.axis = SweepAxis::distance;
  } else {
    throw ConfigError("sweep.axis: expected temperature, thickness or distance, got '" + axis + "'");
  }
  const std::string& spacing = get("sweep.spacing");
  if (spacing != "log" && spacing != "linear") throw ConfigError("sweep.spacing: expected log or linear");
  c.sweep.log_spacing = spacing == "log";
  c.sweep.count = parse_int("sweep.count", get("sweep.count"));
  c.sweep.relative = parse_bool("sweep.relative", get("sweep.relative"));
  const Kind axis_kind = c.sweep.axis == SweepAxis::temperature ? Kind::temperature : Kind::length;
  auto bound = [&](const char* key) {
    const Quantity q = parse_quantity(key, get(key), axis_kind);
    if (c.sweep.axis != SweepAxis::temperature) return q.value;
    if (c.sweep.relative) {
      if (q.relative_tc || !q.has_unit) return q.value;
      return q.value / sc.tc;
    }
    return q.relative_tc ? q.value * sc.tc : q.value;
  };
  c.sweep.min = bound("sweep.min");
  c.sweep.max = bound("sweep.max");
  if (c.sweep.axis != SweepAxis::temperature) c.sweep.relative = false;
  if (c.sweep.count < 2) throw ConfigError("sweep.count must be at least 2");
  if (!(c.sweep.min < c.sweep.max)) throw ConfigError("sweep.min must be below sweep.max");
  if (c.sweep.log_spacing && !(c.sweep.min > 0.0)) throw ConfigError("log sweeps need sweep.min > 0");
  if (c.sweep.min < 0.0) throw ConfigError("sweep.min must be non-negative");
  if (c.sweep.axis == SweepAxis::distance && !(c.sweep.min > 0.0))
    throw ConfigError("distance sweeps need sweep.min > 0");

  c.output_path = get("output.path");

  c.quadrature.rel_tol = num("quadrature.rel_tol", Kind::plain);
  c.quadrature.abs_tol = num("quadrature.abs_tol", Kind::plain);
  c.quadrature.max_subdivisions = parse_int("quadrature.max_subdivisions", get("quadrature.max_subdivisions"));
  c.quadrature.tail_tol = num("quadrature.tail_tol", Kind::plain);
  try {
    c.quadrature.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  c.threads = parse_int("run.threads", get("run.threads"));
  if (c.threads < 0) throw ConfigError("run.threads must be >= 0");
  return c;
}

ScanConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const ScanConfig& c) {
  std::string canon;
  for (const auto& [k, v] : c.entries) {
    // output location and thread count do not change the numbers
    if (k.rfind("output.", 0) == 0 || k.rfind("run.", 0) == 0) continue;
    canon += k + " = " + v + "\n";
  }
  return fnv1a64(canon);
}

std::uint64_t constants_checksum() { return fnv1a64(constants_table_text()); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[v & 0xf];
    v >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

}  // namespace spinflip
