#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "spinflip/materials.hpp"
#include "spinflip/quadrature.hpp"
#include "spinflip/units.hpp"

namespace spinflip {

/// Atom at height z above a slab of thickness H (or a half-space).
struct Geometry {
  double z = 50e-6;                 // m
  std::optional<double> thickness;  // m; empty = half-space
  double k = 0.0;                   // vacuum wavenumber, 1/m

  static Geometry half_space(double z, double k);
  static Geometry slab(double z, double thickness, double k);

  bool is_half_space() const noexcept { return !thickness.has_value(); }
  double kz() const noexcept { return k * z; }
  void validate() const;
};

/// Fresnel coefficients in the dimensionless variable x (complex, so the
/// evanescent substitution x -> i t can be passed directly). The square root
/// w = sqrt((2kz)^2 (eps - 1) + x^2) is taken with Im w >= 0.
std::complex<double> fresnel_rp(std::complex<double> x, std::complex<double> eps, const Geometry& g);
std::complex<double> fresnel_rs(std::complex<double> x, std::complex<double> eps, const Geometry& g);

/// Slab reflection with multiple scattering, r (1 - E)/(1 - r^2 E) with
/// E = exp(i x H / z). Equals r for a half-space and 0 for H = 0.
std::complex<double> scattering_CN(std::complex<double> x, std::complex<double> eps, const Geometry& g);
std::complex<double> scattering_CM(std::complex<double> x, std::complex<double> eps, const Geometry& g);

/// Orientation integrals for spin components parallel and perpendicular to
/// the surface. Real-valued.
double integral_parallel(std::complex<double> eps, const Geometry& g, const QuadratureSettings& settings = {});
double integral_perp(std::complex<double> eps, const Geometry& g, const QuadratureSettings& settings = {});

/// mu0 (muB gS)^2 k^3 / (3 pi hbar), the free-space rate per unit S^2.
double free_space_prefactor(double nu);

/// Free-space rate: prefactor times S^2.
double gamma_free(const TransitionSpec& spec);

/// Surface contribution 2 * prefactor * ((Sx^2 + Sy^2) I_par + Sz^2 I_perp).
double gamma_slab(const TransitionSpec& spec, double i_par, double i_perp);

struct RateResult {
  double gamma_free = 0.0;
  double i_par = 0.0;
  double i_perp = 0.0;
  double gamma_slab = 0.0;
  double occupation_factor = 1.0;  // nbar + 1
  double gamma_total = 0.0;
  double tau = 0.0;
};

RateResult total_rate(const TransitionSpec& spec, const Geometry& g, std::complex<double> eps, double temperature,
                      const QuadratureSettings& settings = {});

/// One regime condition "small << large", satisfied when large/small >= 10.
struct ValidityCheck {
  std::string condition;
  double margin = 0.0;
  bool satisfied = false;
};

struct AnalyticLifetime {
  double tau = 0.0;
  std::vector<ValidityCheck> checks;

  bool all_satisfied() const;
};

inline constexpr double kValidityMargin = 10.0;

/// Closed-form lifetime above a superconducting half-space,
/// tau0 / tau = (nbar + 1) (1 + (3/4)^3 sqrt(eps0 omega) sigma1 / sigma2^(3/2) / (kz)^4).
/// Checks lambda_L << delta and lambda_L << z << lambda.
AnalyticLifetime analytic_tau_sc(const TransitionSpec& spec, const Geometry& g, const ComplexConductivity& sigma,
                                 double temperature);

/// Closed-form lifetime above a normal-metal half-space,
/// tau0 / tau = (nbar + 1) (1 + (3/4)^3 sqrt(2 eps0 omega / sigma1) / (kz)^4).
/// Checks delta << z.
AnalyticLifetime analytic_tau_normal(const TransitionSpec& spec, const Geometry& g, double sigma1,
                                     double temperature);

}  // namespace spinflip
