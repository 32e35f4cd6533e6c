#include "spinflip/slab_rate.hpp"

#include <cmath>
#include <numbers>

#include "spinflip/errors.hpp"

namespace spinflip {

namespace {

using cplx = std::complex<double>;

constexpr double kSingularRel = 1e-14;

// exp(z) - 1 accurate for small |z|
cplx expm1_complex(cplx z) {
  const double a = z.real();
  const double b = z.imag();
  const double sh = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b)};
}

void require_finite_inputs(cplx x, cplx eps) {
  if (!(std::isfinite(x.real()) && std::isfinite(x.imag()) && std::isfinite(eps.real()) &&
        std::isfinite(eps.imag())))
    throw DomainError("non-finite argument to a reflection coefficient");
}

struct Interface {
  cplx r;
  cplx b;  // (1 + r) / x, finite at x = 0
};

// u = x (s) or eps x (p). r = (u - w)/(u + w) written as (u^2 - w^2)/(u + w)^2
// to avoid cancellation when u and w nearly agree.
Interface reflect(cplx x, cplx eps, const Geometry& g, bool p_pol) {
  require_finite_inputs(x, eps);
  if (eps == cplx(1.0, 0.0)) {
    return {0.0, x == cplx(0.0) ? cplx(1.0 / 0.0) : 1.0 / x};
  }
  const double two_kz = 2.0 * g.kz();
  const cplx em1 = eps - 1.0;
  const cplx w = sqrt_upper(two_kz * two_kz * em1 + x * x);
  const cplx factor = p_pol ? eps : cplx(1.0);
  const cplx u = factor * x;
  const cplx den = u + w;
  if (std::abs(den) <= kSingularRel * (std::abs(u) + std::abs(w)) || den == cplx(0.0))
    throw SingularityError("vanishing Fresnel denominator");
  cplx numer;
  if (p_pol) {
    numer = em1 * ((eps + 1.0) * x * x - two_kz * two_kz);
  } else {
    numer = -two_kz * two_kz * em1;
  }
  return {numer / (den * den), 2.0 * factor / den};
}

cplx scattering(cplx x, cplx eps, const Geometry& g, bool p_pol) {
  const Interface in = reflect(x, eps, g, p_pol);
  if (g.is_half_space()) return in.r;
  const double h_over_z = *g.thickness / g.z;
  if (h_over_z == 0.0 || in.r == cplx(0.0)) return 0.0;
  const cplx phase = cplx(0.0, 1.0) * x * h_over_z;
  const cplx e = std::exp(phase);
  const cplx a = x == cplx(0.0) ? cplx(0.0, -h_over_z) : -expm1_complex(phase) / x;
  const cplx tail = e * (1.0 - in.r) * in.b;
  const cplx den = a + tail;
  if (std::abs(den) <= kSingularRel * (std::abs(a) + std::abs(tail)) || den == cplx(0.0))
    throw SingularityError("resonant multiple-reflection denominator");
  return in.r * a / den;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw ConsistencyError(std::string(what) + " is not finite");
  return v;
}

double evanescent_first_width(const Geometry& g) { return std::max(1.0, 2.0 * g.kz()); }

double occupation_plus_one(const TransitionSpec& spec, double temperature) {
  return thermal_occupation(spec.nu, temperature) + 1.0;
}

}  // namespace

Geometry Geometry::half_space(double z, double k) {
  Geometry g;
  g.z = z;
  g.k = k;
  g.validate();
  return g;
}

Geometry Geometry::slab(double z, double thickness, double k) {
  Geometry g;
  g.z = z;
  g.thickness = thickness;
  g.k = k;
  g.validate();
  return g;
}

void Geometry::validate() const {
  if (!(std::isfinite(z) && z > 0.0)) throw DomainError("distance z must be positive");
  if (!(std::isfinite(k) && k > 0.0)) throw DomainError("wavenumber k must be positive");
  if (thickness && !(std::isfinite(*thickness) && *thickness >= 0.0))
    throw DomainError("slab thickness must be non-negative");
}

cplx fresnel_rp(cplx x, cplx eps, const Geometry& g) { return reflect(x, eps, g, true).r; }
cplx fresnel_rs(cplx x, cplx eps, const Geometry& g) { return reflect(x, eps, g, false).r; }
cplx scattering_CN(cplx x, cplx eps, const Geometry& g) { return scattering(x, eps, g, true); }
cplx scattering_CM(cplx x, cplx eps, const Geometry& g) { return scattering(x, eps, g, false); }

double integral_parallel(cplx eps, const Geometry& g, const QuadratureSettings& settings) {
  g.validate();
  const double two_kz = 2.0 * g.kz();
  if (eps == cplx(1.0, 0.0) || (g.thickness && *g.thickness == 0.0)) return 0.0;

  auto propagating = [&](double x) {
    const double q = x / two_kz;
    const cplx c = scattering_CN(x, eps, g) - q * q * scattering_CM(x, eps, g);
    return (std::exp(cplx(0.0, x)) * c).real();
  };
  auto evanescent = [&](double t) {
    const double q = t / two_kz;
    const cplx x(0.0, t);
    return std::exp(-t) * (scattering_CN(x, eps, g) + q * q * scattering_CM(x, eps, g)).imag();
  };
  const double a = integrate_finite(propagating, 0.0, two_kz, settings);
  const double b = integrate_semi_infinite(evanescent, settings, evanescent_first_width(g));
  return checked(3.0 / (8.0 * two_kz) * (a + b), "parallel integral");
}

double integral_perp(cplx eps, const Geometry& g, const QuadratureSettings& settings) {
  g.validate();
  const double two_kz = 2.0 * g.kz();
  if (eps == cplx(1.0, 0.0) || (g.thickness && *g.thickness == 0.0)) return 0.0;

  auto propagating = [&](double x) {
    const double q = x / two_kz;
    return (std::exp(cplx(0.0, x)) * (1.0 - q * q) * scattering_CM(x, eps, g)).real();
  };
  auto evanescent = [&](double t) {
    const double q = t / two_kz;
    return std::exp(-t) * (1.0 + q * q) * scattering_CM(cplx(0.0, t), eps, g).imag();
  };
  const double a = integrate_finite(propagating, 0.0, two_kz, settings);
  const double b = integrate_semi_infinite(evanescent, settings, evanescent_first_width(g));
  return checked(3.0 / (4.0 * two_kz) * (a + b), "perpendicular integral");
}

double free_space_prefactor(double nu) {
  const double k = wavenumber(nu);
  const double m = kConstants.muB * kConstants.gS;
  return kConstants.mu0 * m * m * k * k * k / (3.0 * std::numbers::pi * kConstants.hbar);
}

double gamma_free(const TransitionSpec& spec) {
  // all-zero spin components give a zero rate; total_rate still insists on S^2 > 0
  if (spec.sx2 == 0.0 && spec.sy2 == 0.0 && spec.sz2 == 0.0) return 0.0 * free_space_prefactor(spec.nu);
  spec.validate();
  return free_space_prefactor(spec.nu) * spec.spin_factor();
}

double gamma_slab(const TransitionSpec& spec, double i_par, double i_perp) {
  if (!(std::isfinite(i_par) && std::isfinite(i_perp))) throw DomainError("slab integrals must be finite");
  return 2.0 * free_space_prefactor(spec.nu) * ((spec.sx2 + spec.sy2) * i_par + spec.sz2 * i_perp);
}

RateResult total_rate(const TransitionSpec& spec, const Geometry& g, cplx eps, double temperature,
                      const QuadratureSettings& settings) {
  spec.validate();
  g.validate();
  RateResult r;
  r.gamma_free = gamma_free(spec);
  r.i_par = integral_parallel(eps, g, settings);
  r.i_perp = integral_perp(eps, g, settings);
  r.gamma_slab = gamma_slab(spec, r.i_par, r.i_perp);
  r.occupation_factor = occupation_plus_one(spec, temperature);
  r.gamma_total = (r.gamma_free + r.gamma_slab) * r.occupation_factor;
  r.tau = 1.0 / r.gamma_total;
  if (!(std::isfinite(r.tau) && r.tau > 0.0)) throw ConsistencyError("lifetime is not a positive finite number");
  return r;
}

bool AnalyticLifetime::all_satisfied() const {
  for (const auto& c : checks)
    if (!c.satisfied) return false;
  return true;
}

namespace {

ValidityCheck much_less(const char* condition, double small, double large) {
  const double m = large / small;
  return {condition, m, m >= kValidityMargin};
}

constexpr double kAnalyticCoefficient = 27.0 / 64.0;  // (3/4)^3

}  // namespace

AnalyticLifetime analytic_tau_sc(const TransitionSpec& spec, const Geometry& g, const ComplexConductivity& sigma,
                                 double temperature) {
  g.validate();
  if (!(sigma.sigma2 > 0.0)) throw DomainError("analytic superconductor lifetime needs sigma2 > 0");
  if (!(sigma.sigma1 >= 0.0)) throw DomainError("sigma1 must be non-negative");
  const double omega = spec.angular_frequency();
  const double kz = g.kz();
  const double surface = kAnalyticCoefficient * std::sqrt(kConstants.eps0 * omega) * sigma.sigma1 /
                         std::pow(sigma.sigma2, 1.5) / std::pow(kz, 4);
  AnalyticLifetime out;
  out.tau = 1.0 / (gamma_free(spec) * occupation_plus_one(spec, temperature) * (1.0 + surface));

  const auto lengths = characteristic_lengths(sigma, omega);
  const double lambda_l = *lengths.london_depth;
  const double wavelength = 2.0 * std::numbers::pi / g.k;
  if (lengths.skin_depth) {
    out.checks.push_back(much_less("lambda_L << delta", lambda_l, *lengths.skin_depth));
  } else {
    out.checks.push_back({"lambda_L << delta", std::numeric_limits<double>::infinity(), true});
  }
  out.checks.push_back(much_less("lambda_L << z", lambda_l, g.z));
  out.checks.push_back(much_less("z << lambda", g.z, wavelength));
  return out;
}

AnalyticLifetime analytic_tau_normal(const TransitionSpec& spec, const Geometry& g, double sigma1,
                                     double temperature) {
  g.validate();
  if (!(sigma1 > 0.0)) throw DomainError("analytic normal-metal lifetime needs sigma1 > 0");
  const double omega = spec.angular_frequency();
  const double kz = g.kz();
  const double surface =
      kAnalyticCoefficient * std::sqrt(2.0 * kConstants.eps0 * omega / sigma1) / std::pow(kz, 4);
  AnalyticLifetime out;
  out.tau = 1.0 / (gamma_free(spec) * occupation_plus_one(spec, temperature) * (1.0 + surface));
  const double delta = *characteristic_lengths({sigma1, 0.0}, omega).skin_depth;
  out.checks.push_back(much_less("delta << z", delta, g.z));
  return out;
}

}  // namespace spinflip
