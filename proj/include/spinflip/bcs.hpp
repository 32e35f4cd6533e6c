#pragma once

#include <complex>
#include <vector>

#include "spinflip/materials.hpp"
#include "spinflip/quadrature.hpp"

namespace spinflip {

/// Solution of the gap equation at one temperature. deficit = Delta(0) - gap,
/// kept separately because at low T it drops far below one ulp of Delta(0).
struct GapValue {
  double gap = 0.0;      // J
  double deficit = 0.0;  // J
  /// True when T lies in the last 1e-4 Tc below Tc, or the bracket was lost
  /// there, and the gap was set to 0.
  bool near_tc_clamp = false;
};

/// Relative window below Tc inside which the gap is taken as 0.
inline constexpr double kNearTcWindow = 1e-4;

/// Weak-coupling gap equation with Debye cutoff, Delta(0) = 3.53 kB Tc / 2.
GapValue solve_gap(double temperature, const SuperconductorParams& p, const QuadratureSettings& settings = {});

/// solve_gap(...).gap
double gap_at(double temperature, const SuperconductorParams& p, const QuadratureSettings& settings = {});

/// Tabulated Delta(T) for repeated lookups. 400 samples with 1 - T/Tc
/// log-spaced on [1e-4, 1]; monotone cubic (PCHIP) interpolation of
/// log(Delta/Delta(0)) against log(1 - T/Tc).
class GapCurve {
 public:
  static constexpr int kSamples = 400;

  explicit GapCurve(const SuperconductorParams& p, const QuadratureSettings& settings = {});

  double tc() const noexcept { return tc_; }
  double delta0() const noexcept { return delta0_; }
  double operator()(double temperature) const;

  struct Sample {
    double temperature;
    double gap;
    double deficit;
  };
  const std::vector<Sample>& samples() const noexcept { return samples_; }

 private:
  double tc_;
  double delta0_;
  std::vector<Sample> samples_;
  std::vector<double> knots_;   // log(1 - T/Tc), increasing
  std::vector<double> values_;  // log(Delta/Delta(0))
  std::vector<double> slopes_;
};

/// Clean-limit Mattis-Bardeen sigma/sigma_n for 0 < hbar omega < 2 Delta.
/// Returns 1 when the gap is closed. Throws RegimeError when
/// hbar omega >= 2 Delta > 0.
std::complex<double> mb_clean_conductivity(double omega, double temperature, double gap,
                                           const SuperconductorParams& p, const QuadratureSettings& settings = {});
std::complex<double> mb_clean_conductivity(double omega, double temperature, const SuperconductorParams& p,
                                           const QuadratureSettings& settings = {});

/// Dirty-limit sigma/sigma_L with non-magnetic impurity rate
/// hbar/tau = impurity_strength * Delta(0). With the gap closed this is the
/// Drude form omega tau / (1 - i omega tau).
std::complex<double> dirty_conductivity(double omega, double temperature, double gap, const SuperconductorParams& p,
                                        const QuadratureSettings& settings = {});
std::complex<double> dirty_conductivity(double omega, double temperature, const SuperconductorParams& p,
                                        const QuadratureSettings& settings = {});

}  // namespace spinflip
