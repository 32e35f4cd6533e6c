#include "spinflip/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <thread>

#include "spinflip/bcs.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/slab_rate.hpp"

#ifndef SPINFLIP_VERSION
#define SPINFLIP_VERSION "unknown"
#endif

namespace spinflip {

namespace {

using Row = std::vector<Cell>;

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

bool echoed(const std::string& key) { return key.rfind("output.", 0) != 0 && key.rfind("run.", 0) != 0; }

std::vector<std::string> run_header(const ScanConfig& c, const std::string& command) {
  std::vector<std::string> echo;
  for (const auto& [k, v] : c.entries) {
    if (echoed(k)) echo.push_back("config: " + k + " = " + v);
  }
  std::vector<std::string> h = {
      std::string("spinflip ") + SPINFLIP_VERSION,
      "command: " + command,
      "config_hash: fnv1a64:" + hex64(config_hash(c)),
      "constants_checksum: fnv1a64:" + hex64(constants_checksum()),
      "model: " + model_name(c.material),
  };
  h.insert(h.end(), echo.begin(), echo.end());
  return h;
}

int thread_count(const ScanConfig& c, std::size_t points) {
  int n = c.threads;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::max(1, std::min<int>(n, int(points)));
}

// Evaluates row(i) for every grid index; rows come back in index order.
template <class F, class Fail>
std::vector<Row> evaluate(std::size_t n, int threads, F&& row, Fail&& failed) {
  std::vector<Row> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = row(i);
      } catch (const std::exception& e) {
        out[i] = failed(i, "error: " + sanitize(e.what()));
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

struct Point {
  double axis_value;
  double temperature;
  std::optional<double> thickness;
  double z;
};

Point point_at(const ScanConfig& c, double v) {
  Point p{v, c.temperature, c.thickness, c.z};
  switch (c.sweep.axis) {
    case SweepAxis::temperature:
      p.temperature = c.sweep.relative ? v * c.reference_tc : v;
      break;
    case SweepAxis::thickness:
      p.thickness = v;
      break;
    case SweepAxis::distance:
      p.z = v;
      break;
  }
  return p;
}

Cell thickness_cell(const std::optional<double>& h) {
  if (h) return *h;
  return std::string("inf");
}

Row padded(Row r, std::size_t width, const std::string& status) {
  while (r.size() + 1 < width) r.emplace_back(std::string());
  r.emplace_back(status);
  return r;
}

const SuperconductorParams& require_superconductor(const ScanConfig& c, const char* what) {
  const SuperconductorParams* p = superconductor_params(c.material);
  if (!p) throw ConfigError(std::string(what) + " needs a superconducting material model");
  if (c.sweep.axis != SweepAxis::temperature) throw ConfigError(std::string(what) + " needs sweep.axis = temperature");
  return *p;
}

}  // namespace

int ScanTable::failed_rows() const {
  int n = 0;
  for (const auto& r : rows) {
    const auto* s = std::get_if<std::string>(&r.back());
    if (!s || *s != "ok") ++n;
  }
  return n;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const ScanTable& t, std::ostream& out) {
  for (const auto& line : t.header) out << "# " << line << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out << format_double(*d);
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << '\n';
  }
}

OutputSink::OutputSink(const std::string& path) : path_(path), stream_(&std::cout), owned_(false) {
  if (path == "-") return;
  auto* f = new std::ofstream(path, std::ios::binary | std::ios::trunc);
  if (!*f) {
    delete f;
    throw IoError("cannot open output file '" + path + "'");
  }
  stream_ = f;
  owned_ = true;
}

OutputSink::~OutputSink() {
  if (owned_) delete stream_;
}

void OutputSink::write(const ScanTable& t) {
  write_csv(t, *stream_);
  stream_->flush();
  if (!*stream_) throw IoError("failed writing output '" + path_ + "'");
}

ScanTable run_scan(const ScanConfig& c, const std::string& command) {
  const Material material(c.material, c.quadrature);
  const double omega = c.transition.angular_frequency();
  const double k = wavenumber(c.transition.nu);

  ScanTable t;
  t.header = run_header(c, command);
  t.columns = {"axis_value", "T_K",       "H_m",        "z_m",        "sigma1",     "sigma2",
               "eps_re",     "eps_im",    "i_par",      "i_perp",     "gamma_free", "gamma_slab",
               "occupation", "gamma_total", "tau_s",    "status"};
  const auto grid = c.sweep.values();
  const std::size_t width = t.columns.size();

  auto row = [&](std::size_t i) -> Row {
    const Point p = point_at(c, grid[i]);
    const MaterialResponse m = material.response(p.temperature, omega);
    const Geometry g = p.thickness ? Geometry::slab(p.z, *p.thickness, k) : Geometry::half_space(p.z, k);
    const RateResult r = total_rate(c.transition, g, m.eps, p.temperature, c.quadrature);
    return {p.axis_value,     p.temperature,  thickness_cell(p.thickness),
            p.z,              m.sigma.sigma1, m.sigma.sigma2,
            m.eps.real(),     m.eps.imag(),   r.i_par,
            r.i_perp,         r.gamma_free,   r.gamma_slab,
            r.occupation_factor - 1.0, r.gamma_total, r.tau,
            std::string("ok")};
  };
  auto failed = [&](std::size_t i, const std::string& status) {
    const Point p = point_at(c, grid[i]);
    return padded({p.axis_value, p.temperature, thickness_cell(p.thickness), p.z}, width, status);
  };
  t.rows = evaluate(grid.size(), thread_count(c, grid.size()), row, failed);
  return t;
}

ScanTable run_conductivity_table(const ScanConfig& c) {
  const SuperconductorParams& sc = require_superconductor(c, "conductivity table");
  const Material material(c.material, c.quadrature);
  const double omega = c.transition.angular_frequency();
  const double norm1 = sc.sigma_n;
  const double norm2 = std::holds_alternative<MattisBardeenClean>(c.material) ? sc.sigma_n
                                                                              : london_conductivity(sc, omega);
  ScanTable t;
  t.header = run_header(c, "conductivity");
  t.header.push_back("sigma1_norm = sigma1/norm1, sigma2_norm = sigma2/norm2");
  t.columns = {"axis_value", "T_K", "gap_J", "sigma1", "sigma2", "sigma1_norm", "sigma2_norm", "norm1", "norm2",
               "status"};
  const auto grid = c.sweep.values();
  auto row = [&](std::size_t i) -> Row {
    const Point p = point_at(c, grid[i]);
    const ComplexConductivity s = material.conductivity(p.temperature, omega);
    return {p.axis_value,    p.temperature,   material.gap(p.temperature), s.sigma1, s.sigma2, s.sigma1 / norm1,
            s.sigma2 / norm2, norm1,          norm2,                       std::string("ok")};
  };
  auto failed = [&](std::size_t i, const std::string& status) {
    const Point p = point_at(c, grid[i]);
    return padded({p.axis_value, p.temperature}, t.columns.size(), status);
  };
  t.rows = evaluate(grid.size(), thread_count(c, grid.size()), row, failed);
  return t;
}

ScanTable run_compare(const ScanConfig& c) {
  if (c.thickness || c.sweep.axis == SweepAxis::thickness)
    throw ConfigError("compare uses the half-space closed forms: set geometry.thickness = inf");
  const Material material(c.material, c.quadrature);
  const double omega = c.transition.angular_frequency();
  const double k = wavenumber(c.transition.nu);

  ScanTable t;
  t.header = run_header(c, "compare");
  t.columns = {"axis_value", "T_K",   "z_m",       "sigma1", "sigma2", "tau_exact",
               "tau_analytic", "ratio", "formula", "valid",  "checks", "status"};
  const auto grid = c.sweep.values();
  auto row = [&](std::size_t i) -> Row {
    const Point p = point_at(c, grid[i]);
    const MaterialResponse m = material.response(p.temperature, omega);
    const Geometry g = Geometry::half_space(p.z, k);
    const RateResult exact = total_rate(c.transition, g, m.eps, p.temperature, c.quadrature);
    AnalyticLifetime an;
    std::string formula;
    if (m.sigma.sigma2 > 0.0) {
      an = analytic_tau_sc(c.transition, g, m.sigma, p.temperature);
      formula = "superconductor";
    } else if (m.sigma.sigma1 > 0.0) {
      an = analytic_tau_normal(c.transition, g, m.sigma.sigma1, p.temperature);
      formula = "normal";
    } else {
      an.tau = 1.0 / (gamma_free(c.transition) * (thermal_occupation(c.transition.nu, p.temperature) + 1.0));
      formula = "vacuum";
    }
    std::string checks;
    for (const auto& ck : an.checks) {
      if (!checks.empty()) checks += ';';
      checks += ck.condition + ":" + format_double(ck.margin);
    }
    return {p.axis_value,
            p.temperature,
            p.z,
            m.sigma.sigma1,
            m.sigma.sigma2,
            exact.tau,
            an.tau,
            exact.tau / an.tau,
            formula,
            std::string(an.all_satisfied() ? "true" : "false"),
            checks.empty() ? std::string("none") : sanitize(checks),
            std::string("ok")};
  };
  auto failed = [&](std::size_t i, const std::string& status) {
    const Point p = point_at(c, grid[i]);
    return padded({p.axis_value, p.temperature, p.z}, t.columns.size(), status);
  };
  t.rows = evaluate(grid.size(), thread_count(c, grid.size()), row, failed);
  return t;
}

ScanTable run_gap_table(const ScanConfig& c) {
  const SuperconductorParams& sc = require_superconductor(c, "gap table");
  const double d0 = zero_temperature_gap(sc);
  ScanTable t;
  t.header = run_header(c, "gap");
  t.columns = {"axis_value", "T_K", "gap_J", "gap_meV", "gap_ratio", "deficit_ratio", "near_tc_clamp", "status"};
  const auto grid = c.sweep.values();
  auto row = [&](std::size_t i) -> Row {
    const Point p = point_at(c, grid[i]);
    const GapValue v = solve_gap(p.temperature, sc, c.quadrature);
    return {p.axis_value, p.temperature,         v.gap,
            v.gap / (1e-3 * kConstants.eV), v.gap / d0, v.deficit / d0,
            std::string(v.near_tc_clamp ? "true" : "false"), std::string("ok")};
  };
  auto failed = [&](std::size_t i, const std::string& status) {
    const Point p = point_at(c, grid[i]);
    return padded({p.axis_value, p.temperature}, t.columns.size(), status);
  };
  t.rows = evaluate(grid.size(), thread_count(c, grid.size()), row, failed);
  return t;
}

}  // namespace spinflip
