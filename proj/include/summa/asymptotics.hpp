#pragma once

// Asymptotic-series utilities: checking the asymptotic property at finite
// order, the flat function exp(-z^-beta) that is invisible to it, optimal
// truncation of factorial-type remainders N! alpha^N, Borel summation, and
// the two-term gyromagnetic partial sums.

#include "summa/error.hpp"
#include "summa/exact_core.hpp"
#include "summa/quadrature.hpp"
#include "summa/rational.hpp"
#include "summa/real.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace summa {

/// Declared bound on the coefficients and on the Borel transform.
///   geometric:  |a_n| <= K rate^n       so |B(z)| <= K e^{rate z}
///   factorial:  |a_n| <= K n! rate^n    so B has radius 1/rate unless a closed form is given
struct GrowthClass {
  enum class Kind { geometric, factorial } kind = Kind::geometric;
  double K = 1;
  double rate = 1;
  // Bound |B(z)| <= borel_K e^{borel_rate z} on [0, inf), required for the
  // Borel tail; for the geometric class it follows from K and rate.
  double borel_K = 1;
  double borel_rate = 1;
};

struct CoefficientOracle {
  std::string label;
  std::function<double(unsigned)> value;
  std::function<Rational(unsigned)> exact;  // optional
  GrowthClass growth;
  std::function<double(double)> borel_closed_form;  // optional B(z)
};

inline CoefficientOracle geometric_coefficients(double r) {
  CoefficientOracle c;
  c.label = "r^n, r = " + std::to_string(r);
  c.value = [r](unsigned n) { return std::pow(r, static_cast<double>(n)); };
  c.growth = {GrowthClass::Kind::geometric, 1.0, std::fabs(r), 1.0, std::fabs(r)};
  c.borel_closed_form = [r](double z) { return std::exp(r * z); };
  return c;
}

/// (-1)^n n!, whose Borel transform is 1/(1 + z).
inline CoefficientOracle euler_series_coefficients() {
  CoefficientOracle c;
  c.label = "(-1)^n n!";
  c.value = [](unsigned n) {
    const double f = std::tgamma(static_cast<double>(n) + 1);
    return (n % 2 == 0) ? f : -f;
  };
  c.exact = [](unsigned n) {
    const Rational f(factorial(n));
    return (n % 2 == 0) ? f : -f;
  };
  c.growth = {GrowthClass::Kind::factorial, 1.0, 1.0, 1.0, 0.0};
  c.borel_closed_form = [](double z) { return 1 / (1 + z); };
  return c;
}

/// 1/n!, the Taylor coefficients of exp at 0.
inline CoefficientOracle exp_taylor_coefficients() {
  CoefficientOracle c;
  c.label = "1/n!";
  c.exact = [](unsigned n) { return Rational(bigint(1), factorial(n)); };
  c.value = [](unsigned n) { return 1 / std::tgamma(static_cast<double>(n) + 1); };
  c.growth = {GrowthClass::Kind::geometric, 1.0, 1.0, 1.0, 1.0};
  return c;
}

inline CoefficientOracle zero_coefficients() {
  CoefficientOracle c;
  c.label = "0";
  c.value = [](unsigned) { return 0.0; };
  c.exact = [](unsigned) { return Rational(0); };
  c.growth = {GrowthClass::Kind::geometric, 0.0, 0.0, 0.0, 0.0};
  c.borel_closed_form = [](double) { return 0.0; };
  return c;
}

/// Replace coefficient `index` by `replacement`.
inline CoefficientOracle corrupt_coefficient(CoefficientOracle c, unsigned index, Rational replacement) {
  auto exact = c.exact;
  auto value = c.value;
  const double rd = replacement.to_double();
  c.value = [=](unsigned n) { return n == index ? rd : value(n); };
  if (exact) c.exact = [=](unsigned n) { return n == index ? replacement : exact(n); };
  c.label += " (a_" + std::to_string(index) + " := " + replacement.str() + ")";
  return c;
}

struct AsymptoticCheck {
  bool pass = false;
  std::vector<double> grid;
  std::vector<double> residuals;  // |r(x)| along the grid
};

/// r(x) = (f(x) - sum_{n<=N} a_n (x-a)^n) / (x-a)^N along a grid decreasing
/// toward a; passes when |r| drops by at least 10x from the first point to
/// the last. Evaluated in quad precision.
inline AsymptoticCheck verify_asymptotic(const std::function<quad(quad)>& f, const CoefficientOracle& coeffs,
                                         double a, unsigned N, const std::vector<double>& grid) {
  if (grid.size() < 2) throw domain_error("verify_asymptotic: grid needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > a)) throw domain_error("verify_asymptotic: grid points must exceed a");
    if (i > 0 && !(grid[i] < grid[i - 1])) throw domain_error("verify_asymptotic: grid must decrease toward a");
  }
  std::vector<quad> an;
  for (unsigned n = 0; n <= N; ++n) an.push_back(coeffs.exact ? coeffs.exact(n).to<quad>() : quad(coeffs.value(n)));

  AsymptoticCheck out;
  out.grid = grid;
  for (double x : grid) {
    const quad h = quad(x) - quad(a);
    quad poly = 0;
    for (unsigned n = N + 1; n-- > 0;) poly = poly * h + an[n];
    quad hN = 1;
    for (unsigned n = 0; n < N; ++n) hN *= h;
    out.residuals.push_back(static_cast<double>(abs((f(quad(x)) - poly) / hN)));
  }
  out.pass = out.residuals.back() * 10 <= out.residuals.front();
  return out;
}

/// f_0(z) = exp(-z^-beta); every right derivative at 0 vanishes.
template <RealType Real = double>
Real flat_function(double beta, Real z) {
  using std::exp;
  using std::pow;
  if (!(beta > 0 && beta < 1)) throw domain_error("flat_function: beta must lie in (0, 1)");
  if (!(z > 0)) throw domain_error("flat_function: z must be positive");
  return exp(-pow(z, -Real(beta)));
}

/// |n-th forward difference of f_0 at 0 with step z| / z^n for each z, using
/// f_0(0) = 0. These estimate the n-th right derivative at 0.
inline std::vector<double> flat_derivative_probe(double beta, unsigned n, const std::vector<double>& z_grid) {
  if (n < 1) throw domain_error("flat_derivative_probe: n must be >= 1");
  std::vector<double> out;
  for (double z : z_grid) {
    if (!(z > 0)) throw domain_error("flat_derivative_probe: grid points must be positive");
    quad acc = 0;
    for (unsigned i = 1; i <= n; ++i) {
      const quad c = binomial(n, i).convert_to<quad>();
      const quad term = c * flat_function<quad>(beta, quad(i) * quad(z));
      acc += ((n - i) % 2 == 0) ? term : -term;
    }
    out.push_back(static_cast<double>(abs(acc) / pow(quad(z), static_cast<int>(n))));
  }
  return out;
}

struct TruncationScan {
  unsigned N_star = 0;
  std::vector<unsigned> N;
  std::vector<double> log10_value;  // log10(N! alpha^N)
  bool convex_at_minimum = false;   // second difference > 0 at N_star
};

namespace detail {

inline double log10_rational(const Rational& r) {
  long long en = 0;
  long long ed = 0;
  const double n = to_real<double>(r.numerator(), &en);
  const double d = to_real<double>(r.denominator(), &ed);
  return std::log10(n / d) + static_cast<double>(en - ed) * std::log10(2.0);
}

}  // namespace detail

/// argmin over N >= 1 of N! alpha^N, by exact scan. Ties (at N + 1 = 1/alpha)
/// resolve to the larger N.
inline TruncationScan optimal_truncation(const Rational& alpha) {
  if (!(alpha > Rational(0) && alpha < Rational(1))) {
    throw domain_error("optimal_truncation: alpha must lie in (0, 1)");
  }
  const double inv = 1 / alpha.to_double();
  const auto last = static_cast<unsigned>(std::ceil(2 * inv)) + 3;
  TruncationScan out;
  std::vector<Rational> v;
  Rational current = alpha;  // 1! alpha^1
  for (unsigned N = 1; N <= last; ++N) {
    if (N > 1) current = current * Rational(static_cast<long long>(N)) * alpha;
    v.push_back(current);
    out.N.push_back(N);
    out.log10_value.push_back(detail::log10_rational(current));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[best]) best = i;
  }
  out.N_star = out.N[best];
  if (best >= 1 && best + 1 < v.size()) {
    out.convex_at_minimum = v[best - 1] - Rational(2) * v[best] + v[best + 1] > Rational(0);
  }
  return out;
}

/// Log-space scan for a floating alpha; ties within 1e-12 go to the larger N.
inline TruncationScan optimal_truncation(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw domain_error("optimal_truncation: alpha must lie in (0, 1)");
  const auto last = static_cast<unsigned>(std::ceil(2 / alpha)) + 3;
  TruncationScan out;
  std::vector<double> lv;
  for (unsigned N = 1; N <= last; ++N) {
    const double l = std::lgamma(static_cast<double>(N) + 1) + N * std::log(alpha);
    lv.push_back(l);
    out.N.push_back(N);
    out.log10_value.push_back(l / std::numbers::ln10);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < lv.size(); ++i) {
    if (lv[i] <= lv[best] + 1e-12 * std::max(1.0, std::fabs(lv[best]))) best = i;
  }
  out.N_star = out.N[best];
  if (best >= 1 && best + 1 < lv.size()) {
    const double m = lv[best];
    out.convex_at_minimum = std::exp(lv[best - 1] - m) - 2 + std::exp(lv[best + 1] - m) > 0;
  }
  return out;
}

struct BorelOptions {
  double tol = 1e-10;
  long long max_series_terms = 100000;
};

namespace detail {

// B(z) = sum a_n z^n / n! by partial sums with a ratio tail bound.
inline double borel_transform_series(const CoefficientOracle& c, double z, long long max_terms) {
  const double rate = c.growth.rate;
  if (c.growth.kind == GrowthClass::Kind::factorial && !(rate * z < 1)) {
    throw computation_error("borel: transform of " + c.label + " does not converge at z = " + std::to_string(z) +
                            " and no closed form is available");
  }
  double acc = 0;
  double zpow_over_fact = 1;  // z^n / n!
  for (long long n = 0; n <= max_terms; ++n) {
    if (n > 0) zpow_over_fact *= z / static_cast<double>(n);
    double term;
    if (c.growth.kind == GrowthClass::Kind::factorial) {
      const auto k = static_cast<unsigned>(n);
      const double ratio = c.exact ? (c.exact(k) / Rational(factorial(k))).to_double()
                                   : c.value(k) / std::tgamma(static_cast<double>(n) + 1);
      term = ratio * std::pow(z, static_cast<double>(n));
    } else {
      term = c.value(static_cast<unsigned>(n)) * zpow_over_fact;
    }
    acc += term;
    // Tail bound from the declared growth.
    double next_bound;
    double q;
    if (c.growth.kind == GrowthClass::Kind::factorial) {
      q = rate * z;
      next_bound = c.growth.K * std::pow(q, static_cast<double>(n + 1));
    } else {
      q = rate * z / static_cast<double>(n + 2);
      next_bound = c.growth.K * std::pow(rate, static_cast<double>(n + 1)) * zpow_over_fact * z / static_cast<double>(n + 1);
    }
    if (q < 1 && next_bound / (1 - q) <= 1e-17 * std::max(1.0, std::fabs(acc))) return acc;
  }
  throw computation_error("borel: transform series did not converge at z = " + std::to_string(z));
}

}  // namespace detail

struct BorelResult {
  double value = 0;
  double error_estimate = 0;  // quadrature error plus the bounded tail
  double z_max = 0;
};

/// (1/x) integral_0^inf e^{-z/x} B(z) dz, truncated where the declared bound
/// puts the tail below tol/10.
inline BorelResult borel_sum(const CoefficientOracle& coeffs, double x, BorelOptions opts = {}) {
  if (!(x > 0)) throw domain_error("borel_sum: x must be positive");
  if (!(opts.tol > 0)) throw domain_error("borel_sum: tol must be positive");
  const double kappa = 1 / x - coeffs.growth.borel_rate;
  if (!(kappa > 0)) {
    throw computation_error("borel: e^{-z/x} B(z) is not integrable for " + coeffs.label +
                            " at x = " + std::to_string(x));
  }
  BorelResult out;
  const double K = coeffs.growth.borel_K;
  if (K == 0) return out;

  // Tail: integral_Z^inf (K/x) e^{-kappa z} dz = K e^{-kappa Z} / (x kappa) <= tol/10.
  const double z_max = std::max(x, std::log(10 * K / (x * kappa * opts.tol)) / kappa);
  out.z_max = z_max;
  std::function<double(double)> B;
  if (coeffs.borel_closed_form) {
    B = coeffs.borel_closed_form;
  } else {
    B = [&](double z) { return detail::borel_transform_series(coeffs, z, opts.max_series_terms); };
  }
  auto integrand = [&](double z) { return std::exp(-z / x) * B(z) / x; };
  std::vector<double> breaks;
  const int panels = 16;
  for (int i = 0; i <= panels; ++i) breaks.push_back(z_max * i / panels);
  QuadratureOptions<double> q;
  q.abs_tol = opts.tol / 10;
  const auto r = integrate<double>(integrand, breaks, q);
  out.value = r.value;
  out.error_estimate = r.error + opts.tol / 10;
  return out;
}

/// (1/2)(alpha/pi) and (1/2)(alpha/pi) - 0.328 (alpha/pi)^2.
inline double gyro_partial(double alpha, int order) {
  if (order != 1 && order != 2) throw domain_error("gyro_partial: only orders 1 and 2 have published coefficients");
  if (!(alpha >= 0)) throw domain_error("gyro_partial: alpha must be >= 0");
  const double a = alpha / std::numbers::pi;
  return order == 1 ? 0.5 * a : 0.5 * a - 0.328 * a * a;
}

}  // namespace summa
