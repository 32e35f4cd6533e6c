#include "spinflip/bcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinflip/errors.hpp"
#include "spinflip/units.hpp"

namespace spinflip {

namespace {

using cplx = std::complex<double>;

// Below this relative deficit the gap equation is solved in linearized form.
constexpr double kLinearDeficit = 1e-8;

void require_temperature(double t) {
  if (!(std::isfinite(t) && t >= 0.0)) throw DomainError("temperature must be non-negative and finite");
}

// 2 * int_0^a dx / (E (exp(E/kT) + 1)),  E = sqrt(x^2 + gap^2)
double thermal_depletion(double gap, double kt, double a, const QuadratureSettings& settings) {
  auto f = [=](double x) {
    const double e = std::hypot(x, gap);
    const double q = std::exp(-e / kt);
    return q / (e * (1.0 + q));
  };
  QuadratureSettings s = settings;
  s.rel_tol = std::min(settings.rel_tol, 1e-12);
  double width = std::min(a, std::sqrt(kt * (2.0 * gap + kt)));
  double lo = 0.0;
  double total = 0.0;
  while (lo < a) {
    const double hi = std::min(a, lo + width);
    total += integrate_finite(f, lo, hi, s);
    // everything beyond is below exp(-700)
    if ((std::hypot(hi, gap) - gap) / kt > 700.0) break;
    lo = hi;
    width *= 2.0;
  }
  return 2.0 * total;
}

}  // namespace

GapValue solve_gap(double temperature, const SuperconductorParams& p, const QuadratureSettings& settings) {
  require_temperature(temperature);
  const double d0 = zero_temperature_gap(p);
  if (temperature == 0.0) return {d0, 0.0, false};
  if (temperature >= p.tc) return {0.0, d0, false};
  if (temperature > p.tc * (1.0 - kNearTcWindow)) return {0.0, d0, true};

  const double kt = kConstants.kB * temperature;
  const double a = p.debye_energy;

  const double j0 = thermal_depletion(d0, kt, a, settings);
  const double linear = j0 * d0 * std::hypot(a, d0) / a;
  if (linear < kLinearDeficit * d0) return {d0 - linear, linear, false};

  const double lhs = std::asinh(a / d0);
  auto g = [&](double gap) { return std::asinh(a / gap) - lhs - thermal_depletion(gap, kt, a, settings); };
  const double lo = 1e-6 * d0;
  if (g(lo) <= 0.0) return {0.0, d0, true};
  const double root = bisect_root(g, lo, d0, 1e-14);
  return {root, d0 - root, false};
}

double gap_at(double temperature, const SuperconductorParams& p, const QuadratureSettings& settings) {
  return solve_gap(temperature, p, settings).gap;
}

GapCurve::GapCurve(const SuperconductorParams& p, const QuadratureSettings& settings)
    : tc_(p.tc), delta0_(zero_temperature_gap(p)) {
  p.validate();
  const double x_lo = std::log(kNearTcWindow);
  samples_.reserve(kSamples);
  knots_.reserve(kSamples);
  values_.reserve(kSamples);
  for (int j = 0; j < kSamples; ++j) {
    const double x = j == kSamples - 1 ? 0.0 : x_lo * (1.0 - double(j) / (kSamples - 1));
    const double s = j == 0 ? kNearTcWindow : std::exp(x);
    const double t = tc_ * (1.0 - s);
    const GapValue v = solve_gap(t, p, settings);
    if (!(v.gap > 0.0)) throw ConsistencyError("gap vanished inside the tabulated range");
    samples_.push_back({t, v.gap, v.deficit});
    knots_.push_back(j == 0 ? x_lo : x);
    values_.push_back(std::log1p(-v.deficit / delta0_));
  }

  // Fritsch-Carlson (PCHIP) derivatives
  const int n = kSamples;
  std::vector<double> h(n - 1), delta(n - 1);
  for (int k = 0; k < n - 1; ++k) {
    h[k] = knots_[k + 1] - knots_[k];
    delta[k] = (values_[k + 1] - values_[k]) / h[k];
  }
  slopes_.assign(n, 0.0);
  for (int k = 1; k < n - 1; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3.0 * d0)) return 3.0 * d0;
    return d;
  };
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double GapCurve::operator()(double temperature) const {
  require_temperature(temperature);
  if (temperature >= tc_) return 0.0;
  if (temperature > tc_ * (1.0 - kNearTcWindow)) return 0.0;
  if (temperature == 0.0) return delta0_;
  const double x = std::min(std::log1p(-temperature / tc_), 0.0);
  if (x <= knots_.front()) return delta0_ * std::exp(values_.front());
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t k = std::min<std::size_t>(it - knots_.begin(), knots_.size() - 1) - 1;
  const double hk = knots_[k + 1] - knots_[k];
  const double u = (x - knots_[k]) / hk;
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double y = (2.0 * u3 - 3.0 * u2 + 1.0) * values_[k] + (u3 - 2.0 * u2 + u) * hk * slopes_[k] +
                   (-2.0 * u3 + 3.0 * u2) * values_[k + 1] + (u3 - u2) * hk * slopes_[k + 1];
  return delta0_ * std::exp(std::min(y, 0.0));
}

namespace {

struct MbSetup {
  double gap;
  double hw;
  double kt;  // 0 at T = 0
};

MbSetup check_regime(double omega, double temperature, double gap) {
  if (!(std::isfinite(omega) && omega > 0.0)) throw DomainError("angular frequency must be positive");
  require_temperature(temperature);
  if (!(std::isfinite(gap) && gap >= 0.0)) throw DomainError("gap must be non-negative");
  const double hw = kConstants.hbar * omega;
  if (gap > 0.0 && hw >= 2.0 * gap)
    throw RegimeError("hbar omega >= 2 Delta: pair-breaking absorption is not modeled");
  return {gap, hw, kConstants.kB * temperature};
}

double tanh_half(double e, double kt) { return kt == 0.0 ? 1.0 : std::tanh(e / (2.0 * kt)); }

// tanh((x + hw)/2kT) - tanh(x/2kT) without cancellation
double tanh_difference(double x, double hw, double kt) {
  if (kt == 0.0) return 0.0;
  const double a = x / (2.0 * kt);
  const double d = hw / (2.0 * kt);
  const double e2a = std::exp(-2.0 * a);
  return 4.0 * std::sinh(d) * std::exp(-2.0 * a - d) / ((1.0 + e2a) * (1.0 + e2a * std::exp(-2.0 * d)));
}

// Quasiparticle factors in the window x in [Delta - hw, Delta], from exact
// endpoint offsets: u1 = -i sqrt(Delta^2 - x^2), u2 = sqrt((x + hw)^2 - Delta^2).
struct WindowPoint {
  double x;
  cplx u1;
  double u2;
  double num;  // x^2 + Delta^2 + hw x
};

WindowPoint window_point(const EdgePoint& p, const MbSetup& s) {
  const double x = p.x;
  const double u1 = std::sqrt(p.from_b * (2.0 * s.gap - p.from_b));
  const double u2 = std::sqrt(p.from_a * (p.from_a + 2.0 * s.gap));
  return {x, cplx(0.0, -u1), u2, x * x + s.gap * s.gap + s.hw * x};
}

// Tail x = Delta + hw sinh^2 t.
struct TailPoint {
  double x;
  double u1;
  double u2;
  double num;
  double jac;    // dx/dt
  double g_jac;  // g dx/dt
  double gm1_jac;  // (g - 1) dx/dt
};

TailPoint tail_point(double t, const MbSetup& s) {
  const double sh = std::sinh(t);
  const double ch = std::cosh(t);
  const double y = s.hw * sh * sh;
  const double x = s.gap + y;
  const double r1 = std::sqrt(s.hw * (2.0 * s.gap + y));
  const double r2 = std::sqrt(s.hw * (2.0 * s.gap + y + s.hw));
  const double u1 = sh * r1;
  const double u2 = ch * r2;
  const double num = x * x + s.gap * s.gap + s.hw * x;
  const double big_g = 2.0 / std::sqrt((2.0 * s.gap + y) * (2.0 * s.gap + y + s.hw));
  const double jac = 2.0 * s.hw * sh * ch;
  const double b = 2.0 * x + s.hw;
  const double gm1 = big_g * s.gap * s.gap * b * b / (num + u1 * u2);
  return {x, u1, u2, num, jac, num * big_g, gm1};
}

// Integrates real and imaginary parts separately so that a small component
// keeps its own relative accuracy.
template <class F>
cplx integrate_parts(F&& f, double a, double b, const QuadratureSettings& settings) {
  const double re = integrate_finite([&](double t) { return f(t).real(); }, a, b, settings);
  const double im = integrate_finite([&](double t) { return f(t).imag(); }, a, b, settings);
  return {re, im};
}

template <class F>
cplx integrate_tail(F&& f, double t_max, const QuadratureSettings& settings, bool complex_parts) {
  cplx total = 0.0;
  for (double lo = 0.0; lo < t_max; lo += 1.0) {
    const double hi = std::min(t_max, lo + 1.0);
    if (complex_parts) {
      total += integrate_parts(f, lo, hi, settings);
    } else {
      total += integrate_finite([&](double t) { return f(t).real(); }, lo, hi, settings);
    }
  }
  return total;
}

double t_limit(double span, double hw) { return std::asinh(std::sqrt(span / hw)); }

}  // namespace

cplx mb_clean_conductivity(double omega, double temperature, double gap, const SuperconductorParams& p,
                           const QuadratureSettings& settings) {
  (void)p;
  const MbSetup s = check_regime(omega, temperature, gap);
  if (gap == 0.0) return {1.0, 0.0};

  auto window = [&](const EdgePoint& e) {
    const WindowPoint w = window_point(e, s);
    // g is purely imaginary here: g = i num / (|u1| u2)
    return tanh_half(w.x + s.hw, s.kt) * w.num / (-w.u1.imag() * w.u2) / s.hw;
  };
  const double sigma2 = integrate_gap_edge(window, gap - s.hw, gap, true, true, settings);

  double sigma1 = 0.0;
  if (s.kt > 0.0) {
    auto tail = [&](double t) {
      const TailPoint q = tail_point(t, s);
      return cplx(tanh_difference(q.x, s.hw, s.kt) * q.g_jac / s.hw, 0.0);
    };
    sigma1 = integrate_tail(tail, t_limit(60.0 * s.kt, s.hw), settings, false).real();
  }
  return {sigma1, sigma2};
}

cplx mb_clean_conductivity(double omega, double temperature, const SuperconductorParams& p,
                           const QuadratureSettings& settings) {
  return mb_clean_conductivity(omega, temperature, gap_at(temperature, p, settings), p, settings);
}

cplx dirty_conductivity(double omega, double temperature, double gap, const SuperconductorParams& p,
                        const QuadratureSettings& settings) {
  const MbSetup s = check_regime(omega, temperature, gap);
  const double gamma = p.impurity_strength * zero_temperature_gap(p);  // hbar/tau
  const cplx ig(0.0, gamma);
  if (gap == 0.0) return cplx(0.0, 1.0) * s.hw / (s.hw + ig);

  auto window = [&](const EdgePoint& e) {
    const WindowPoint w = window_point(e, s);
    const cplx g = w.num / (w.u1 * w.u2);
    const cplx ka = (g + 1.0) / (w.u2 - w.u1 + ig);
    const cplx kb = (g - 1.0) / (w.u2 + w.u1 - ig);
    return 0.5 * tanh_half(w.x + s.hw, s.kt) * (ka - kb);
  };
  const double w_re = integrate_gap_edge([&](const EdgePoint& e) { return window(e).real(); }, gap - s.hw, gap, true,
                                       true, settings);
  const double w_im = integrate_gap_edge([&](const EdgePoint& e) { return window(e).imag(); }, gap - s.hw, gap, true,
                                       true, settings);

  auto tail = [&](double t) {
    const TailPoint q = tail_point(t, s);
    const double diff = s.hw * (2.0 * q.x + s.hw) / (q.u1 + q.u2);  // u2 - u1
    const double sum = q.u1 + q.u2;
    const cplx ka = (q.g_jac + q.jac) / (diff + ig);
    const cplx kb = q.gm1_jac / (sum - ig);
    // kb + kc with kc = (g - 1)/(u2 + u1 + i hbar/tau) is real
    const double kb_kc = 2.0 * q.gm1_jac * sum / (sum * sum + gamma * gamma);
    const double tx = tanh_half(q.x, s.kt);
    return 0.5 * (tanh_difference(q.x, s.hw, s.kt) * (ka - kb) - tx * kb_kc);
  };
  const double span = 1e6 * std::max({gap, s.kt, gamma});
  const cplx t_part = integrate_tail(tail, t_limit(span, s.hw), settings, true);

  return cplx(0.0, 1.0) * (w_re + cplx(0.0, 1.0) * w_im + t_part);
}

cplx dirty_conductivity(double omega, double temperature, const SuperconductorParams& p,
                        const QuadratureSettings& settings) {
  return dirty_conductivity(omega, temperature, gap_at(temperature, p, settings), p, settings);
}

}  // namespace spinflip
