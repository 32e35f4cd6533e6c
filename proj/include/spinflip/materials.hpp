#pragma once

#include <complex>
#include <optional>

#include "spinflip/quadrature.hpp"

namespace spinflip {

/// sigma1 + i sigma2 in (Ohm m)^-1.
struct ComplexConductivity {
  double sigma1 = 0.0;
  double sigma2 = 0.0;

  std::complex<double> value() const { return {sigma1, sigma2}; }
};

struct SuperconductorParams {
  double tc = 8.31;                    // K
  double london_depth = 35e-9;         // lambda_L(0), m
  double sigma_n = 2e7;                // (Ohm m)^-1
  double debye_energy = 0.025 * 1.602176634e-19;  // J
  double impurity_strength = 13.61;    // hbar / (tau Delta(0))
  double coherence_length = 39e-9;     // m
  double mean_free_path = 9e-9;        // m
  double zn = 2.1;

  static SuperconductorParams niobium() { return {}; }
  void validate() const;
};

struct DrudeMetalParams {
  double theta = 175.0;                          // K
  double plasma_energy = 9.0 * 1.602176634e-19;  // J
  double bg_prefactor = 0.0847 * 1.602176634e-19;  // J

  static DrudeMetalParams gold() { return {}; }
  void validate() const;
};

/// Delta(0) = 3.53 kB Tc / 2.
double zero_temperature_gap(const SuperconductorParams& p);

/// sigma_L = 1 / (omega mu0 lambda_L(0)^2).
double london_conductivity(const SuperconductorParams& p, double omega);

/// eps = 1 - sigma2/(eps0 omega) + i sigma1/(eps0 omega).
std::complex<double> permittivity(const ComplexConductivity& sigma, double omega);

/// Inverse of permittivity().
ComplexConductivity conductivity_from_permittivity(std::complex<double> eps, double omega);

/// Gorter-Casimir two-fluid model; (sigma_n, 0) at and above Tc.
ComplexConductivity two_fluid_conductivity(double temperature, const SuperconductorParams& p, double omega);

/// Abrikosov-Gor'kov n_s/n0 = (pi tau/hbar) Delta tanh(Delta / 2 kB T), clamped to [0, 1].
double ag_superfluid_fraction(double temperature, double gap, const SuperconductorParams& p);

/// Two-fluid conductivity with the AG superfluid fraction in place of
/// Gorter-Casimir: sigma1 = sigma_n sqrt(1 - n_s), sigma2 = sigma_L sqrt(n_s).
ComplexConductivity ag_two_fluid_conductivity(double temperature, double gap, const SuperconductorParams& p,
                                              double omega);

/// Integral_0^u x^5 e^x / (e^x - 1)^2 dx. Upper limits above 200 use the
/// asymptotic value 120 zeta(5).
double bloch_gruneisen_integral(double upper, const QuadratureSettings& settings = {});

/// Scattering rate nu(T) in 1/s from hbar nu = prefactor (T/theta)^5 I(theta/T).
double bloch_gruneisen_rate(double temperature, const DrudeMetalParams& p, const QuadratureSettings& settings = {});

/// Drude permittivity with the Bloch-Gruneisen scattering rate.
std::complex<double> drude_bg_permittivity(double temperature, double omega, const DrudeMetalParams& p,
                                           const QuadratureSettings& settings = {});

/// sigma_n / Z_N and hbar/tau Delta(0) times Z_N.
SuperconductorParams eliashberg_rescale(const SuperconductorParams& p);

struct CharacteristicLengths {
  std::optional<double> london_depth;  // only when sigma2 > 0
  std::optional<double> skin_depth;    // only when sigma1 > 0
};

CharacteristicLengths characteristic_lengths(const ComplexConductivity& sigma, double omega);

}  // namespace spinflip
