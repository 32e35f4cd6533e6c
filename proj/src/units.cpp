#include "spinflip/units.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

std::string constants_table_text() {
  const std::pair<const char*, double> rows[] = {
      {"mu0", kConstants.mu0},   {"eps0", kConstants.eps0}, {"c", kConstants.c},
      {"hbar", kConstants.hbar}, {"h", kConstants.h},       {"kB", kConstants.kB},
      {"muB", kConstants.muB},   {"gS", kConstants.gS},     {"eV", kConstants.eV},
  };
  std::string out;
  for (const auto& [name, value] : rows) {
    out += name;
    out += " = ";
    out += shortest(value);
    out += '\n';
  }
  return out;
}

double TransitionSpec::angular_frequency() const noexcept {
  return 2.0 * std::numbers::pi * nu;
}

void TransitionSpec::validate() const {
  require_finite(nu, "transition frequency");
  require_finite(sx2, "sx2");
  require_finite(sy2, "sy2");
  require_finite(sz2, "sz2");
  if (nu <= 0.0) throw DomainError("transition frequency must be positive");
  if (sx2 < 0.0 || sy2 < 0.0 || sz2 < 0.0)
    throw DomainError("squared spin components must be non-negative");
  if (spin_factor() <= 0.0) throw DomainError("spin factor S^2 must be positive");
}

double angular_frequency(double nu) {
  require_finite(nu, "frequency");
  if (nu <= 0.0) throw DomainError("frequency must be positive");
  return 2.0 * std::numbers::pi * nu;
}

double wavenumber(double nu) { return angular_frequency(nu) / kConstants.c; }

double thermal_occupation(double nu, double temperature) {
  require_finite(nu, "frequency");
  require_finite(temperature, "temperature");
  if (nu <= 0.0) throw DomainError("frequency must be positive");
  if (temperature < 0.0) throw DomainError("temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  const double x = kConstants.h * nu / (kConstants.kB * temperature);
  if (x < kOccupationSeriesThreshold) return 1.0 / x - 0.5;
  return 1.0 / std::expm1(x);
}

}  // namespace spinflip
