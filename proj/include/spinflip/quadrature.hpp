#pragma once

// Adaptive integration and bracketing root finding.
//
// All integrators are templated on the integrand, which may return either
// double or std::complex<double>. Error estimates are taken on |.| of the
// value type.
//
//   integrate_finite         global adaptive Gauss-Kronrod 7/15 on [a, b]
//   integrate_semi_infinite  geometric panels on [0, inf) for e^{-x}-damped f
//   integrate_gap_edge       sin^2 / t^2 substitutions for 1/sqrt endpoints

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "spinflip/errors.hpp"

namespace spinflip {

struct QuadratureSettings {
  double rel_tol = 1e-8;
  /// Extra absolute floor. The effective floor is never below a roundoff
  /// level scaled by the first coarse estimate of the integral of |f|.
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
  /// Semi-infinite integrals stop once a panel adds less than this fraction.
  double tail_tol = 1e-10;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
    if (!(abs_tol >= 0.0)) throw DomainError("abs_tol must be non-negative");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("tail_tol must lie in (0, 1)");
  }
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

/// Point handed to integrate_gap_edge integrands. from_a and from_b are the
/// distances to the endpoints, computed without cancellation.
struct EdgePoint {
  double x;
  double from_a;
  double from_b;
};

namespace detail {

// QUADPACK qk15 tables: Kronrod abscissae in decreasing order; the Gauss
// 7-point rule uses the odd-indexed nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
inline double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
inline bool all_finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  double abs_value;  // integral of |f| over the panel (coarse)

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const T f_centre = f(centre);
  T kronrod = f_centre * kKronrodWeights[7];
  T gauss = f_centre * kGaussWeights[3];
  double abs_sum = std::abs(f_centre) * kKronrodWeights[7];

  std::array<T, 7> f_left{};
  std::array<T, 7> f_right{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T fl = f(centre - dx);
    const T fr = f(centre + dx);
    f_left[j] = fl;
    f_right[j] = fr;
    kronrod += (fl + fr) * kKronrodWeights[j];
    abs_sum += (std::abs(fl) + std::abs(fr)) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (fl + fr) * kGaussWeights[j / 2];
  }

  const T mean = kronrod * 0.5;
  double asc = std::abs(f_centre - mean) * kKronrodWeights[7];
  for (int j = 0; j < 7; ++j)
    asc += (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean)) * kKronrodWeights[j];

  const double abs_half = std::abs(half);
  const T value = kronrod * half;
  const double res_abs = abs_sum * abs_half;
  const double res_asc = asc * abs_half;
  double err = magnitude((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0)
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * res_abs, err);
  return {a, b, value, err, res_abs};
}

template <class F>
using integrand_value_t = std::decay_t<std::invoke_result_t<F&, double>>;

}  // namespace detail

/// Global adaptive Gauss-Kronrod 7/15 on [a, b]: the panel with the largest
/// error estimate is bisected until the summed error is below
/// max(rel_tol |I|, floor). Throws ConvergenceError when max_subdivisions
/// panels are in use and the tolerance is still not met.
template <class F>
auto adaptive_gauss_kronrod(F&& f, double a, double b, const QuadratureSettings& settings)
    -> QuadratureResult<detail::integrand_value_t<F>> {
  using T = detail::integrand_value_t<F>;
  settings.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integration limits must be finite");
  if (a > b) throw DomainError("integrate_finite requires a <= b");

  QuadratureResult<T> out;
  if (a == b) return out;

  int evaluations = 0;
  auto counted = [&](double x) -> T {
    ++evaluations;
    return f(x);
  };

  auto first = detail::gauss_kronrod_15<T>(counted, a, b);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = std::max(settings.abs_tol, 50.0 * eps * first.abs_value);

  std::priority_queue<detail::Panel<T>> open;
  T frozen_value{};
  double frozen_error = 0.0;
  T total = first.value;
  double total_error = first.error;
  open.push(first);
  int panels = 1;

  auto converged = [&] {
    return total_error <= std::max(settings.rel_tol * detail::magnitude(total), floor);
  };

  while (!converged()) {
    if (open.empty()) break;  // every remaining panel is at roundoff resolution
    if (panels >= settings.max_subdivisions) {
      throw ConvergenceError("adaptive quadrature exhausted " +
                                 std::to_string(settings.max_subdivisions) + " subdivisions",
                             detail::magnitude(total), total_error);
    }
    const detail::Panel<T> worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 4.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    auto left = detail::gauss_kronrod_15<T>(counted, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(counted, mid, worst.b);
    open.push(left);
    open.push(right);
    ++panels;

    // Re-sum from scratch to keep rounding drift out of the stopping test.
    T sum = frozen_value;
    double err = frozen_error;
    auto copy = open;
    while (!copy.empty()) {
      sum += copy.top().value;
      err += copy.top().error;
      copy.pop();
    }
    total = sum;
    total_error = err;
  }

  if (!detail::all_finite(total)) throw ConsistencyError("quadrature produced a non-finite value");
  out.value = total;
  out.error = total_error;
  out.intervals = panels;
  out.evaluations = evaluations;
  return out;
}

/// Integral of f over [a, b]; 0 when a == b.
template <class F>
auto integrate_finite(F&& f, double a, double b, const QuadratureSettings& settings = {}) {
  return adaptive_gauss_kronrod(std::forward<F>(f), a, b, settings).value;
}

/// Integral of f over [0, inf) for integrands carrying an e^{-x} factor.
/// Panels [x_j, x_j + w 2^j] starting at width first_width; stops after two
/// consecutive panels each contribute less than tail_tol of the running sum.
template <class F>
auto integrate_semi_infinite(F&& f, const QuadratureSettings& settings = {}, double first_width = 1.0) {
  using T = detail::integrand_value_t<F>;
  settings.validate();
  if (!(first_width > 0.0) || !std::isfinite(first_width))
    throw DomainError("first panel width must be positive");

  constexpr int kMaxPanels = 60;
  T acc{};
  double x = 0.0;
  double width = first_width;
  int quiet = 0;
  for (int j = 0; j < kMaxPanels; ++j) {
    QuadratureSettings panel = settings;
    panel.abs_tol = std::max(settings.abs_tol, 0.1 * settings.rel_tol * detail::magnitude(acc));
    const T v = integrate_finite(f, x, x + width, panel);
    acc += v;
    if (!detail::all_finite(acc)) throw DivergenceError("semi-infinite integral is not finite");
    if (detail::magnitude(v) <= settings.tail_tol * detail::magnitude(acc)) {
      if (++quiet >= 2) return acc;
    } else {
      quiet = 0;
    }
    x += width;
    width *= 2.0;
  }
  throw DivergenceError("semi-infinite integral: panel contributions did not decay after " +
                        std::to_string(kMaxPanels) + " panels");
}

namespace detail {

template <class F>
auto call_edge(F& f, const EdgePoint& p) {
  if constexpr (std::is_invocable_v<F&, EdgePoint>) {
    return f(p);
  } else {
    return f(p.x);
  }
}

template <class F>
using edge_value_t = std::decay_t<decltype(call_edge(std::declval<F&>(), std::declval<EdgePoint>()))>;

}  // namespace detail

/// Integral over [a, b] of f with at most inverse-square-root singularities
/// at the flagged endpoints. Both ends: x = a + (b - a) sin^2(theta). One end:
/// x = a + t^2 (or b - t^2). No flags: plain integrate_finite. The integrand
/// may take either a double or an EdgePoint.
template <class F>
auto integrate_gap_edge(F&& f, double a, double b, bool singular_at_a, bool singular_at_b,
                        const QuadratureSettings& settings = {}) {
  using T = detail::edge_value_t<F>;
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integration limits must be finite");
  if (a > b) throw DomainError("integrate_gap_edge requires a <= b");
  const double length = b - a;
  if (length == 0.0) return T{};

  if (singular_at_a && singular_at_b) {
    auto g = [&](double theta) -> T {
      const double s = std::sin(theta);
      const double c = std::cos(theta);
      const double from_a = length * s * s;
      const double from_b = length * c * c;
      const double x = from_a <= from_b ? a + from_a : b - from_b;
      return detail::call_edge(f, EdgePoint{x, from_a, from_b}) * (2.0 * length * s * c);
    };
    return integrate_finite(g, 0.0, 0.5 * std::numbers::pi, settings);
  }
  if (singular_at_a) {
    auto g = [&](double t) -> T {
      const double from_a = t * t;
      return detail::call_edge(f, EdgePoint{a + from_a, from_a, length - from_a}) * (2.0 * t);
    };
    return integrate_finite(g, 0.0, std::sqrt(length), settings);
  }
  if (singular_at_b) {
    auto g = [&](double t) -> T {
      const double from_b = t * t;
      return detail::call_edge(f, EdgePoint{b - from_b, length - from_b, from_b}) * (2.0 * t);
    };
    return integrate_finite(g, 0.0, std::sqrt(length), settings);
  }
  auto g = [&](double x) -> T { return detail::call_edge(f, EdgePoint{x, x - a, b - x}); };
  return integrate_finite(g, a, b, settings);
}

/// Square root on the branch Im >= 0 (fields decaying into an absorbing
/// medium). Non-negative real input gives the non-negative real root.
inline std::complex<double> sqrt_upper(std::complex<double> w) {
  std::complex<double> r = std::sqrt(w);
  if (r.imag() < 0.0) r = -r;
  return r;
}

/// Bisection on a bracket with g(lo) g(hi) <= 0. Stops when the bracket is
/// narrower than rel_tol |x| or no longer shrinks in floating point.
template <class G>
double bisect_root(G&& g, double lo, double hi, double rel_tol) {
  if (!(std::isfinite(lo) && std::isfinite(hi))) throw DomainError("bracket must be finite");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  double g_lo = g(lo);
  const double g_hi = g(hi);
  if (std::isnan(g_lo) || std::isnan(g_hi)) throw DomainError("function is NaN at bracket end");
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo < 0.0) == (g_hi < 0.0)) throw BracketError("bisect_root: no sign change on bracket");

  for (int iter = 0; iter < 4096; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= rel_tol * std::abs(mid)) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace spinflip
