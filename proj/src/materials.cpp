#include "spinflip/materials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinflip/errors.hpp"
#include "spinflip/units.hpp"

namespace spinflip {

namespace {

constexpr double kZeta5 = 1.0369277551433699263;
constexpr double kBgCap = 200.0;

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) throw DomainError(std::string(name) + " must be positive and finite");
}

void require_omega(double omega) { require_positive(omega, "angular frequency"); }

void require_temperature(double t) {
  if (!(std::isfinite(t) && t >= 0.0)) throw DomainError("temperature must be non-negative and finite");
}

}  // namespace

void SuperconductorParams::validate() const {
  require_positive(tc, "Tc");
  require_positive(london_depth, "London depth");
  require_positive(sigma_n, "sigma_n");
  require_positive(debye_energy, "Debye energy");
  require_positive(impurity_strength, "impurity strength");
  require_positive(coherence_length, "coherence length");
  require_positive(mean_free_path, "mean free path");
  if (!(std::isfinite(zn) && zn >= 1.0)) throw DomainError("Z_N must be >= 1");
}

void DrudeMetalParams::validate() const {
  require_positive(theta, "Debye temperature");
  require_positive(plasma_energy, "plasma energy");
  require_positive(bg_prefactor, "Bloch-Gruneisen prefactor");
}

double zero_temperature_gap(const SuperconductorParams& p) { return 3.53 * kConstants.kB * p.tc / 2.0; }

double london_conductivity(const SuperconductorParams& p, double omega) {
  require_omega(omega);
  return 1.0 / (omega * kConstants.mu0 * p.london_depth * p.london_depth);
}

std::complex<double> permittivity(const ComplexConductivity& sigma, double omega) {
  require_omega(omega);
  const double scale = kConstants.eps0 * omega;
  return {1.0 - sigma.sigma2 / scale, sigma.sigma1 / scale};
}

ComplexConductivity conductivity_from_permittivity(std::complex<double> eps, double omega) {
  require_omega(omega);
  const double scale = kConstants.eps0 * omega;
  return {eps.imag() * scale, (1.0 - eps.real()) * scale};
}

ComplexConductivity two_fluid_conductivity(double temperature, const SuperconductorParams& p, double omega) {
  require_temperature(temperature);
  if (temperature >= p.tc) return {p.sigma_n, 0.0};
  const double t = temperature / p.tc;
  const double nn = std::min(t * t * t * t, 1.0);
  return {p.sigma_n * std::sqrt(nn), london_conductivity(p, omega) * std::sqrt(1.0 - nn)};
}

double ag_superfluid_fraction(double temperature, double gap, const SuperconductorParams& p) {
  require_temperature(temperature);
  if (!(std::isfinite(gap) && gap >= 0.0)) throw DomainError("gap must be non-negative");
  if (gap == 0.0) return 0.0;
  const double th = temperature == 0.0 ? 1.0 : std::tanh(gap / (2.0 * kConstants.kB * temperature));
  const double f = std::numbers::pi / p.impurity_strength * (gap / zero_temperature_gap(p)) * th;
  return std::clamp(f, 0.0, 1.0);
}

ComplexConductivity ag_two_fluid_conductivity(double temperature, double gap, const SuperconductorParams& p,
                                              double omega) {
  if (temperature >= p.tc) return {p.sigma_n, 0.0};
  const double ns = ag_superfluid_fraction(temperature, gap, p);
  return {p.sigma_n * std::sqrt(1.0 - ns), london_conductivity(p, omega) * std::sqrt(ns)};
}

double bloch_gruneisen_integral(double upper, const QuadratureSettings& settings) {
  if (!(upper >= 0.0)) throw DomainError("Bloch-Gruneisen limit must be non-negative");
  if (upper > kBgCap) return 120.0 * kZeta5;
  auto f = [](double x) {
    if (x == 0.0) return 0.0;
    // x^5 e^x/(e^x-1)^2 = x^5 e^-x/(1-e^-x)^2
    const double d = -std::expm1(-x);
    return std::pow(x, 5) * std::exp(-x) / (d * d);
  };
  return integrate_finite(f, 0.0, upper, settings);
}

double bloch_gruneisen_rate(double temperature, const DrudeMetalParams& p, const QuadratureSettings& settings) {
  require_positive(temperature, "temperature");
  const double r = temperature / p.theta;
  const double energy = p.bg_prefactor * std::pow(r, 5) * bloch_gruneisen_integral(p.theta / temperature, settings);
  return energy / kConstants.hbar;
}

std::complex<double> drude_bg_permittivity(double temperature, double omega, const DrudeMetalParams& p,
                                           const QuadratureSettings& settings) {
  require_omega(omega);
  const double nu = bloch_gruneisen_rate(temperature, p, settings);
  const double wp = p.plasma_energy / kConstants.hbar;
  const double denom = omega * omega + nu * nu;
  return {1.0 - wp * wp / denom, nu * wp * wp / (omega * denom)};
}

SuperconductorParams eliashberg_rescale(const SuperconductorParams& p) {
  if (!(p.zn >= 1.0)) throw DomainError("Z_N must be >= 1");
  SuperconductorParams out = p;
  out.sigma_n = p.sigma_n / p.zn;
  out.impurity_strength = p.impurity_strength * p.zn;
  return out;
}

CharacteristicLengths characteristic_lengths(const ComplexConductivity& sigma, double omega) {
  require_omega(omega);
  CharacteristicLengths out;
  if (sigma.sigma2 > 0.0) out.london_depth = std::sqrt(1.0 / (omega * kConstants.mu0 * sigma.sigma2));
  if (sigma.sigma1 > 0.0) out.skin_depth = std::sqrt(2.0 / (omega * kConstants.mu0 * sigma.sigma1));
  return out;
}

}  // namespace spinflip
