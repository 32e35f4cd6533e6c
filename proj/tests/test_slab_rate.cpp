#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "spinflip/bcs.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/material_model.hpp"
#include "spinflip/materials.hpp"
#include "spinflip/slab_rate.hpp"
#include "spinflip/units.hpp"

using namespace spinflip;
using cplx = std::complex<double>;

namespace {
const double kNu = 560e3;
const double kOmega = angular_frequency(kNu);
const double kK = wavenumber(kNu);
const SuperconductorParams kNb = SuperconductorParams::niobium();
const TransitionSpec kSpec{};

cplx two_fluid_eps(double t) { return permittivity(two_fluid_conductivity(t * kNb.tc, kNb, kOmega), kOmega); }

double tau_at(const cplx& eps, const Geometry& g, double T) { return total_rate(kSpec, g, eps, T).tau; }
}  // namespace

TEST_CASE("free-space rate") {
  CHECK(1.0 / gamma_free(kSpec) == doctest::Approx(1.14e25).epsilon(0.03));
  TransitionSpec none = kSpec;
  none.sy2 = none.sz2 = 0.0;
  CHECK(gamma_free(none) == 0.0);
  TransitionSpec twice = kSpec;
  twice.nu = 2.0 * kNu;
  CHECK(gamma_free(twice) / gamma_free(kSpec) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("Fresnel coefficients: no interface") {
  const Geometry g = Geometry::half_space(50e-6, kK);
  for (double x : {1e-8, 1e-7, 1e-6}) {
    CHECK(std::abs(fresnel_rp(x, 1.0, g)) == 0.0);
    CHECK(std::abs(fresnel_rs(x, 1.0, g)) == 0.0);
  }
  CHECK(std::abs(scattering_CN(cplx(0.0, 3.0), 1.0, g)) == 0.0);
  CHECK(integral_parallel(1.0, g) == 0.0);
  CHECK(integral_perp(1.0, g) == 0.0);
}

TEST_CASE("Fresnel coefficients: perfect-conductor limit") {
  const Geometry g = Geometry::half_space(50e-6, kK);
  const cplx eps(-1e30, 1e28);
  for (cplx x : {cplx(1e-7, 0.0), cplx(0.0, 0.5), cplx(0.0, 20.0)}) {
    CHECK(std::abs(fresnel_rp(x, eps, g) - 1.0) < 1e-6);
    CHECK(std::abs(fresnel_rs(x, eps, g) + 1.0) < 1e-6);
  }
}

TEST_CASE("Fresnel coefficients: passivity and sign") {
  const Geometry g = Geometry::half_space(50e-6, kK);
  const double two_kz = 2.0 * g.kz();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const cplx eps(std::pow(10.0, 20.0 * u(rng) - 10.0) * (u(rng) < 0.5 ? -1.0 : 1.0),
                   std::pow(10.0, 20.0 * u(rng) - 10.0));
    const double x = two_kz * (1e-6 + u(rng) * (1.0 - 1e-6));
    CHECK(std::abs(fresnel_rp(x, eps, g)) <= 1.0 + 1e-12);
    CHECK(std::abs(fresnel_rs(x, eps, g)) <= 1.0 + 1e-12);
  }
  for (double e : {1.5, 4.0, 1e6}) {
    const cplx r = fresnel_rs(0.3 * two_kz, e, g);
    CHECK(r.imag() == 0.0);
    CHECK(r.real() < 0.0);
  }
}

TEST_CASE("surface plasmon pole is reported") {
  // eps x + w = 0 at x = i 2kz / sqrt(-eps - 1)
  const Geometry g = Geometry::half_space(50e-6, kK);
  const double two_kz = 2.0 * g.kz();
  CHECK_THROWS_AS(fresnel_rp(cplx(0.0, two_kz / std::sqrt(2.0)), -3.0, g), SingularityError);
}

TEST_CASE("multiple-scattering coefficients") {
  const cplx eps = two_fluid_eps(0.5);
  const Geometry half = Geometry::half_space(50e-6, kK);
  const Geometry none = Geometry::slab(50e-6, 0.0, kK);
  const Geometry thick = Geometry::slab(50e-6, 1.0, kK);
  for (cplx x : {cplx(1e-7, 0.0), cplx(0.0, 0.01), cplx(0.0, 1.0), cplx(0.0, 30.0)}) {
    CHECK(scattering_CN(x, eps, half) == fresnel_rp(x, eps, half));
    CHECK(scattering_CM(x, eps, half) == fresnel_rs(x, eps, half));
    CHECK(std::abs(scattering_CN(x, eps, none)) == 0.0);
    CHECK(std::abs(scattering_CM(x, eps, none)) == 0.0);
    if (x.imag() > 0.0) CHECK(std::abs(scattering_CM(x, eps, thick) / fresnel_rs(x, eps, half) - 1.0) < 1e-12);
  }
  // thin film: coefficient is finite at x = 0 and matches its neighbourhood
  const Geometry film = Geometry::slab(50e-6, 0.9e-6, kK);
  const cplx c0 = scattering_CM(0.0, eps, film);
  const cplx c1 = scattering_CM(cplx(0.0, 1e-9), eps, film);
  CHECK(std::isfinite(std::abs(c0)));
  CHECK(std::abs(c1 / c0 - 1.0) < 1e-6);
  CHECK(integral_parallel(eps, none) == 0.0);
}

TEST_CASE("evanescent tail against a trapezoid oracle") {
  const cplx eps = two_fluid_eps(0.5);
  const Geometry g = Geometry::half_space(50e-6, kK);
  auto f = [&](double x) { return std::exp(-x) * scattering_CM(cplx(0.0, x), eps, g); };
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  const cplx v = integrate_semi_infinite(f, s);
  const int n = 2000000;
  const double h = 200.0 / n;
  cplx sum = 0.5 * (f(0.0) + f(200.0));
  for (int i = 1; i < n; ++i) sum += f(i * h);
  CHECK(std::abs(v / (sum * h) - 1.0) < 1e-6);
}

TEST_CASE("slab rate combination") {
  CHECK(gamma_slab(kSpec, 0.0, 0.0) == 0.0);
  const double gb = free_space_prefactor(kNu);
  TransitionSpec z_only{kNu, 0.0, 0.0, 0.125};
  CHECK(gamma_slab(z_only, 3.0, 7.0) == doctest::Approx(2.0 * gamma_free(z_only) * 7.0).epsilon(1e-14));
  // default orientation, I = 1: 2 Gamma_B (1/16 + 1/16) = 2 Gamma^0
  CHECK(gamma_slab(kSpec, 1.0, 1.0) == doctest::Approx(2.0 * gamma_free(kSpec)).epsilon(1e-14));
  CHECK(gamma_slab(kSpec, 1.0, 1.0) == doctest::Approx(0.25 * gb).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_slab(kSpec, NAN, 1.0), DomainError);
}

TEST_CASE("total rate identities") {
  const double T = 0.5 * kNb.tc;
  const RateResult r = total_rate(kSpec, Geometry::half_space(50e-6, kK), two_fluid_eps(0.5), T);
  CHECK(r.gamma_total == (r.gamma_free + r.gamma_slab) * r.occupation_factor);
  CHECK(r.tau == 1.0 / r.gamma_total);
  CHECK(r.gamma_free > 0.0);
  CHECK(r.occupation_factor == thermal_occupation(kNu, T) + 1.0);

  const Geometry none = Geometry::slab(50e-6, 0.0, kK);
  const RateResult v = total_rate(kSpec, none, two_fluid_eps(0.5), T);
  CHECK(v.tau == doctest::Approx(1.0 / gamma_free(kSpec) / (thermal_occupation(kNu, T) + 1.0)).epsilon(1e-14));
  CHECK(v.tau == doctest::Approx(7.34e19).epsilon(0.03));
  CHECK(total_rate(kSpec, none, 1.0, 0.0).tau == doctest::Approx(1.0 / gamma_free(kSpec)).epsilon(1e-14));
}

TEST_CASE("superconducting transition boosts the lifetime") {
  const Material dirty(DirtyBCS{kNb});
  const Geometry g = Geometry::half_space(50e-6, kK);
  const double t_sc = tau_at(dirty.response(0.5 * kNb.tc, kOmega).eps, g, 0.5 * kNb.tc);
  const double t_n = tau_at(dirty.response(1.01 * kNb.tc, kOmega).eps, g, 1.01 * kNb.tc);
  CHECK(t_sc / t_n >= 1e3);
}

TEST_CASE("spin orientation ratio near the surface") {
  for (double t : {0.2, 0.5, 0.8}) {
    const Geometry g = Geometry::half_space(50e-6, kK);
    const double r = integral_perp(two_fluid_eps(t), g) / integral_parallel(two_fluid_eps(t), g);
    CHECK(r >= 1.9);
    CHECK(r <= 2.1);
  }
}

TEST_CASE("spin orientation ratio wherever the surface loss dominates") {
  // kz < 1e-3 and the dissipative near-field term well above the O(1)
  // mirror contribution
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  for (int i = 0; i < 300; ++i) {
    const double z = std::pow(10.0, -6.0 + 4.0 * u(rng));
    const Geometry g = Geometry::half_space(z, kK);
    if (!(g.kz() < 1e-3)) continue;
    const ComplexConductivity s{std::pow(10.0, 4.0 + 4.0 * u(rng)), u(rng) < 0.5 ? 0.0 : std::pow(10.0, 10.0 + 5.0 * u(rng))};
    const double surface = s.sigma2 > 0.0
                               ? std::sqrt(kConstants.eps0 * kOmega) * s.sigma1 / std::pow(s.sigma2, 1.5)
                               : std::sqrt(2.0 * kConstants.eps0 * kOmega / s.sigma1);
    if (surface / std::pow(g.kz(), 4) < 100.0) continue;
    const cplx eps = permittivity(s, kOmega);
    const double r = integral_perp(eps, g) / integral_parallel(eps, g);
    CHECK(r >= 1.9);
    CHECK(r <= 2.1);
    ++tested;
  }
  CHECK(tested > 50);
}

TEST_CASE("analytic superconductor lifetime") {
  const double T = 0.5 * kNb.tc;
  const Geometry g = Geometry::half_space(50e-6, kK);
  const double n1 = thermal_occupation(kNu, T) + 1.0;
  const auto none = analytic_tau_sc(kSpec, g, {0.0, 1.8e14}, T);
  CHECK(none.tau == doctest::Approx(1.0 / (gamma_free(kSpec) * n1)).epsilon(1e-14));

  const auto s = two_fluid_conductivity(T, kNb, kOmega);
  const auto an = analytic_tau_sc(kSpec, g, s, T);
  CHECK(an.all_satisfied());
  CHECK(an.checks.size() == 3);
  CHECK(tau_at(permittivity(s, kOmega), g, T) / an.tau == doctest::Approx(1.0).epsilon(0.1));

  const auto rescaled = eliashberg_rescale(kNb);
  const auto sr = two_fluid_conductivity(T, rescaled, kOmega);
  CHECK(analytic_tau_sc(kSpec, g, sr, T).tau / an.tau == doctest::Approx(kNb.zn).epsilon(1e-3));

  CHECK_THROWS_AS(analytic_tau_sc(kSpec, g, {1e6, 0.0}, T), DomainError);
  // lambda_L >~ z flags the estimate
  CHECK(!analytic_tau_sc(kSpec, Geometry::half_space(100e-9, kK), s, T).all_satisfied());
}

TEST_CASE("Eliashberg rescaling shortens the lifetime by 1/sqrt(Z_N)") {
  const double T = 0.5 * kNb.tc;
  const Geometry g = Geometry::half_space(50e-6, kK);
  auto tau = [&](const SuperconductorParams& p) {
    const auto s = mb_clean_conductivity(kOmega, T, p) * p.sigma_n;
    const auto an = analytic_tau_sc(kSpec, g, {s.real(), s.imag()}, T);
    CHECK(an.all_satisfied());
    return an.tau;
  };
  CHECK(tau(eliashberg_rescale(kNb)) / tau(kNb) == doctest::Approx(1.0 / std::sqrt(kNb.zn)).epsilon(0.1));
}

TEST_CASE("analytic normal-metal lifetime") {
  const double T = 1.1 * kNb.tc;
  const Geometry g = Geometry::half_space(5e-3, kK);
  const double n1 = thermal_occupation(kNu, T) + 1.0;
  CHECK(analytic_tau_normal(kSpec, g, 1e60, T).tau == doctest::Approx(1.0 / (gamma_free(kSpec) * n1)).epsilon(1e-9));
  auto surface = [&](double s1) { return gamma_free(kSpec) * n1 * analytic_tau_normal(kSpec, g, s1, T).tau; };
  CHECK((1.0 / surface(1e7) - 1.0) / (1.0 / surface(2e7) - 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(analytic_tau_normal(kSpec, g, 0.0, T), DomainError);
  const auto an = analytic_tau_normal(kSpec, g, kNb.sigma_n, T);
  CHECK(an.all_satisfied());
  CHECK(tau_at(permittivity({kNb.sigma_n, 0.0}, kOmega), g, T) / an.tau == doctest::Approx(1.0).epsilon(0.1));

  const Geometry near = Geometry::half_space(50e-6, kK);
  const auto gold = conductivity_from_permittivity(drude_bg_permittivity(kNb.tc, kOmega, DrudeMetalParams::gold()), kOmega);
  const double ratio = analytic_tau_normal(kSpec, near, gold.sigma1, kNb.tc).tau /
                       analytic_tau_normal(kSpec, near, kNb.sigma_n, kNb.tc).tau;
  CHECK(ratio > std::pow(10.0, 1.5));
  CHECK(ratio < std::pow(10.0, 2.5));
}

TEST_CASE("thickness limits") {
  const Material dirty(DirtyBCS{kNb});
  const double T = 0.5 * kNb.tc;
  const cplx eps = dirty.response(T, kOmega).eps;
  const double delta = *characteristic_lengths(dirty.conductivity(T, kOmega), kOmega).skin_depth;
  const RateResult half = total_rate(kSpec, Geometry::half_space(50e-6, kK), eps, T);
  for (double f : {3.5, 5.0, 10.0}) {
    const RateResult r = total_rate(kSpec, Geometry::slab(50e-6, f * delta, kK), eps, T);
    CHECK(std::abs(r.gamma_slab / half.gamma_slab - 1.0) < 0.01);
  }
  CHECK(total_rate(kSpec, Geometry::slab(50e-6, 0.0, kK), eps, T).gamma_slab == 0.0);

  // interior minimum of the lifetime in H
  std::vector<double> hs, taus;
  for (int i = 0; i <= 40; ++i) {
    hs.push_back(1e-8 * std::pow(10.0, 5.0 * i / 40.0));
    taus.push_back(tau_at(eps, Geometry::slab(50e-6, hs.back(), kK), T));
  }
  const auto it = std::min_element(taus.begin(), taus.end());
  const std::size_t im = std::size_t(it - taus.begin());
  CHECK(im > 0);
  CHECK(im < taus.size() - 1);
  const double hmin = hs[im];
  CHECK(*it < tau_at(eps, Geometry::slab(50e-6, hmin / 10.0, kK), T));
  CHECK(*it < tau_at(eps, Geometry::slab(50e-6, hmin * 10.0, kK), T));
  // below the minimum the slab term shrinks with H
  for (std::size_t i = 1; i < im; ++i) CHECK(1.0 / taus[i] > 1.0 / taus[i - 1]);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(Geometry::half_space(0.0, kK), DomainError);
  CHECK_THROWS_AS(Geometry::slab(1e-6, -1.0, kK), DomainError);
  CHECK_THROWS_AS(Geometry::half_space(1e-6, 0.0), DomainError);
  CHECK_NOTHROW(Geometry::slab(1e-6, 0.0, kK));
}
