#pragma once

#include <string>

namespace spinflip {

/// SI constant table. Every module reads constants from here.
struct PhysicalConstants {
  double mu0;   // vacuum permeability, H/m
  double eps0;  // vacuum permittivity, F/m
  double c;     // speed of light, m/s
  double hbar;  // reduced Planck constant, J s
  double h;     // Planck constant, J s
  double kB;    // Boltzmann constant, J/K
  double muB;   // Bohr magneton, J/T
  double gS;    // electron g-factor magnitude
  double eV;    // electron-volt, J
};

/// CODATA 2018.
inline constexpr PhysicalConstants kConstants{
    1.25663706212e-6,
    8.8541878128e-12,
    299792458.0,
    1.054571817e-34,
    6.62607015e-34,
    1.380649e-23,
    9.2740100783e-24,
    2.00231930436256,
    1.602176634e-19,
};

/// Constant table rendered as "name = value" lines (shortest round-trip
/// decimal), used for the run-header checksum.
std::string constants_table_text();

/// Atomic spin-flip transition: frequency and squared spin matrix elements
/// <f|S_j/hbar|i>^2.
struct TransitionSpec {
  double nu = 560e3;  // Hz
  double sx2 = 0.0;
  double sy2 = 1.0 / 16.0;
  double sz2 = 1.0 / 16.0;

  double spin_factor() const noexcept { return sx2 + sy2 + sz2; }
  double angular_frequency() const noexcept;
  void validate() const;
};

/// omega = 2 pi nu.
double angular_frequency(double nu);

/// Vacuum wavenumber k = 2 pi nu / c.
double wavenumber(double nu);

/// Bose-Einstein occupation 1/(exp(h nu / kB T) - 1); exactly 0 at T = 0.
double thermal_occupation(double nu, double temperature);

/// Below this value of h nu / kB T the occupation switches to the series
/// kB T / h nu - 1/2.
inline constexpr double kOccupationSeriesThreshold = 1e-6;

}  // namespace spinflip
