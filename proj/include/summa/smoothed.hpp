#pragma once

// Smoothed sums  S_s(eta_N) = sum_n eta(n/N) n^s  and their large-N
// asymptotics  -B_{s+1}/(s+1) + C_{eta,s} N^{s+1} + o(1),  plus the
// delta-sequence pairings used to contrast smoothed and sharp limits.

#include "summa/cutoff.hpp"
#include "summa/error.hpp"
#include "summa/quadrature.hpp"
#include "summa/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace summa {

namespace detail {

template <RealType Real>
Real ipow(Real base, unsigned exponent) {
  Real result = 1;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return result;
}

inline long long ceil_count(double N) { return static_cast<long long>(std::ceil(N)); }

}  // namespace detail

/// sum_{n=1}^{ceil(N)} eta(n/N) n^s. Terms with n/N >= 1 vanish for bump and poly.
template <RealType Real = double>
Real smoothed_sum(unsigned s, const Cutoff& cutoff, double N) {
  if (!(N >= 1)) throw domain_error("smoothed_sum: N must be >= 1");
  const Real scale = Real(N);
  const long long last = detail::ceil_count(N);
  Real acc = 0;
  for (long long n = 1; n <= last; ++n) {
    const Real rn = Real(n);
    const Real w = cutoff(rn / scale);
    if (w != 0) acc += w * detail::ipow(rn, s);
  }
  return acc;
}

/// C_{eta,s} = integral_0^1 x^s eta(x) dx to absolute tolerance tol.
template <RealType Real = double>
Real mellin(const Cutoff& cutoff, unsigned s, Real tol) {
  if (!(tol > 0)) throw domain_error("mellin: tol must be positive");
  QuadratureOptions<Real> opts;
  opts.abs_tol = tol;
  auto f = [&](Real x) { return detail::ipow(x, s) * cutoff(x); };
  return integrate<Real>(f, Real(0), Real(1), opts).value;
}

struct AsymptoticFit {
  double constant = 0;            // D(N_max)
  double error_estimate = 0;      // |D(N_max) - D(N_max / 2)|
  double growth_coefficient = 0;  // C_{eta,s}
  double rate_exponent = 0;       // slope of log|D(N) - constant| against log N
  std::vector<double> grid;
  std::vector<double> residuals;  // |D(N) - constant| on grid[0 .. size-2]
};

namespace detail {

// Least-squares slope of log y against log x, skipping non-positive y.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0) || !(x[i] > 0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return 0;
  const double denom = m * sxx - sx * sx;
  if (denom == 0) return 0;
  return (m * sxy - sx * sy) / denom;
}

}  // namespace detail

/// Regularized constant of sum n^s from D(N) = S_s(eta_N) - C_{eta,s} N^{s+1}
/// evaluated in quad precision across the grid.
inline AsymptoticFit constant_extraction(unsigned s, const Cutoff& cutoff,
                                         const std::vector<double>& grid) {
  if (!cutoff.is_smooth_to(static_cast<int>(s) + 2)) {
    throw domain_error("constant_extraction: cutoff " + cutoff.label() + " is not C^" +
                       std::to_string(s + 2));
  }
  if (grid.size() < 4) throw domain_error("constant_extraction: grid needs at least 4 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw domain_error("constant_extraction: grid must increase");
  }
  if (grid.front() < 1) throw domain_error("constant_extraction: grid points must be >= 1");
  if (grid.back() < 100) throw domain_error("constant_extraction: largest grid point must be >= 100");

  const quad C = mellin<quad>(cutoff, s, quad("1e-31"));
  auto D = [&](double N) {
    return smoothed_sum<quad>(s, cutoff, N) - C * detail::ipow(quad(N), s + 1);
  };

  std::vector<quad> d;
  d.reserve(grid.size());
  for (double N : grid) d.push_back(D(N));

  AsymptoticFit fit;
  fit.grid = grid;
  const quad last = d.back();
  fit.constant = static_cast<double>(last);
  fit.growth_coefficient = static_cast<double>(C);
  const double half = grid.back() / 2;
  fit.error_estimate = static_cast<double>(abs(last - (half >= 1 ? D(half) : quad(0))));
  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    xs.push_back(grid[i]);
    fit.residuals.push_back(static_cast<double>(abs(d[i] - last)));
  }
  fit.rate_exponent = detail::loglog_slope(xs, fit.residuals);
  return fit;
}

/// sum_{n=1}^{ceil(N)} eta(n/N) (-1)^{n-1}.
inline double grandi_smoothed(const Cutoff& cutoff, double N) {
  if (!(N >= 1)) throw domain_error("grandi_smoothed: N must be >= 1");
  const long long last = detail::ceil_count(N);
  double acc = 0;
  for (long long n = 1; n <= last; ++n) {
    const double w = cutoff(static_cast<double>(n) / N);
    acc += (n % 2 == 1) ? w : -w;
  }
  return acc;
}

struct ScalingComparison {
  double lhs = 0;  // sum_n 2n eta(2n/N)
  double rhs = 0;  // 2 sum_n n eta(n/N)
  bool differ = false;
};

/// Scalar multiplication does not commute with smoothing: 2+4+6+... smoothed
/// at scale N differs from twice the smoothed 1+2+3+....
inline ScalingComparison scaling_counterexample(const Cutoff& cutoff, double N) {
  if (!(N >= 2)) throw domain_error("scaling_counterexample: N must be >= 2");
  ScalingComparison out;
  const long long last = detail::ceil_count(N);
  for (long long n = 1; 2 * n <= last; ++n) {
    out.lhs += 2.0 * static_cast<double>(n) * cutoff(2.0 * static_cast<double>(n) / N);
  }
  double acc = 0;
  for (long long n = 1; n <= last; ++n) {
    acc += static_cast<double>(n) * cutoff(static_cast<double>(n) / N);
  }
  out.rhs = 2.0 * acc;
  out.differ = std::fabs(out.lhs - out.rhs) > 1e-12 * std::max(1.0, std::fabs(out.rhs));
  return out;
}

/// Smooth test function supported in [lower, upper] within [-pi, pi].
struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double lower = -std::numbers::pi;
  double upper = std::numbers::pi;
  std::string label;
};

/// Bump exp(1 - 1/(1 - ((x - center)/radius)^2)), value 1 at the center.
inline TestFunction bump_test_function(double center, double radius) {
  if (!(radius > 0)) throw domain_error("bump_test_function: radius must be positive");
  if (center - radius < -std::numbers::pi - 1e-12 || center + radius > std::numbers::pi + 1e-12) {
    throw domain_error("bump_test_function: support must lie in [-pi, pi]");
  }
  TestFunction t;
  t.lower = center - radius;
  t.upper = center + radius;
  t.label = "bump(" + std::to_string(center) + "," + std::to_string(radius) + ")";
  const Cutoff eta = Cutoff::bump();
  t.value = [=](double x) { return eta((x - center) / radius); };
  t.derivative = [=](double x) { return eta.deriv(1, (x - center) / radius) / radius; };
  return t;
}

inline TestFunction constant_test_function(double c = 1.0) {
  TestFunction t;
  t.label = "constant";
  t.value = [c](double) { return c; };
  t.derivative = [](double) { return 0.0; };
  return t;
}

/// Dirichlet kernel sin((j + 1/2) x) / sin(x / 2) = sum_{k=-j}^{j} e^{ikx}.
/// Near x = 0 the removable singularity is replaced by its Taylor expansion.
inline double dirichlet_kernel(int j, double x) {
  const double a = j + 0.5;
  const double patch = std::min(1e-4, 1e-3 / a);
  if (std::fabs(x) < patch) {
    const double A = a * a * x * x;
    const double B = 0.25 * x * x;
    return (a / 0.5) * (1.0 + (B - A) / 6.0 + 7.0 * B * B / 360.0 - A * B / 36.0 + A * A / 120.0);
  }
  return std::sin(a * x) / std::sin(0.5 * x);
}

namespace detail {

// Breakpoints at every half-period of a kernel oscillating with frequency
// omega, clipped to the test function's support, plus an explicit 0.
inline std::vector<double> oscillation_breakpoints(const TestFunction& phi, double omega) {
  const double lo = std::max(phi.lower, -std::numbers::pi);
  const double hi = std::min(phi.upper, std::numbers::pi);
  std::vector<double> points;
  const double step = std::numbers::pi / std::max(omega, 1.0);
  const auto panels = static_cast<long long>(std::ceil((hi - lo) / step));
  for (long long i = 0; i <= panels; ++i) {
    const double x = (i == panels) ? hi : lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(panels);
    points.push_back(x);
  }
  if (lo < 0 && hi > 0) {
    points.push_back(0.0);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
  return points;
}

}  // namespace detail

/// (1/2pi) integral_{-pi}^{pi} D_j(x) phi(x) dx, which tends to phi(0).
inline double delta_pairing(int j, const TestFunction& phi, double tol) {
  if (j < 1) throw domain_error("delta_pairing: j must be >= 1");
  if (!(tol > 0)) throw domain_error("delta_pairing: tol must be positive");
  QuadratureOptions<double> opts;
  opts.abs_tol = tol * 2 * std::numbers::pi;
  auto f = [&](double x) { return dirichlet_kernel(j, x) * phi.value(x); };
  const auto points = detail::oscillation_breakpoints(phi, j + 0.5);
  return integrate<double>(f, points, opts).value / (2 * std::numbers::pi);
}

/// integral_{-pi}^{pi} sin(jx) phi(x) dx.
inline double sine_pairing(int j, const TestFunction& phi, double tol) {
  QuadratureOptions<double> opts;
  opts.abs_tol = tol;
  auto f = [&](double x) { return std::sin(j * x) * phi.value(x); };
  return integrate<double>(f, detail::oscillation_breakpoints(phi, j), opts).value;
}

/// The same pairing after one integration by parts: (1/j) integral cos(jx) phi'(x) dx.
inline double sine_pairing_by_parts(int j, const TestFunction& phi, double tol) {
  QuadratureOptions<double> opts;
  opts.abs_tol = tol * j;
  auto f = [&](double x) { return std::cos(j * x) * phi.derivative(x); };
  return integrate<double>(f, detail::oscillation_breakpoints(phi, j), opts).value / j;
}

}  // namespace summa
