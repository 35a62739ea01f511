#pragma once

// Euler-Maclaurin in two concrete instantiations.
//
// Tail form, for f vanishing with its first s+1 derivatives at N:
//     integral_0^N f - f(0)/2 - sum_{n=1}^N f(n)
//         = sum_{k=2}^{s+1} B_k/k! f^(k-1)(0) + O(N ||f||_{C^{s+2}}).
//
// Stirling form, f = log x:
//     g(n) = log n! - (n + 1/2) log n + n - log(2 pi)/2
//          = sum_{m=1}^{M} B_{2m} / (2m (2m-1) n^{2m-1}) + R_M(n),
//     |R_M(n)| <= |B_{2M+2}| / ((2M+1)(2M+2) n^{2M+1}).
// g is oriented so that it is exactly the quantity the series approximates.

#include "summa/cutoff.hpp"
#include "summa/error.hpp"
#include "summa/exact_core.hpp"
#include "summa/quadrature.hpp"
#include "summa/rational.hpp"
#include "summa/real.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace summa {

/// A function on [0, support_end] with analytic derivatives up to `order`.
struct SmoothFunctionSpec {
  std::function<double(double)> value;
  std::function<double(int, double)> deriv;  // deriv(k, x), 0 <= k <= order
  double support_end = 0;
  int order = 0;
  std::string label;
};

/// f(x) = x^s eta(x / N), with derivatives by the Leibniz rule.
inline SmoothFunctionSpec monomial_times_cutoff(unsigned s, const Cutoff& cutoff, double N) {
  if (!(N > 0)) throw domain_error("monomial_times_cutoff: N must be positive");
  SmoothFunctionSpec f;
  f.support_end = N;
  f.order = cutoff.smoothness_order();
  f.label = "x^" + std::to_string(s) + " * " + cutoff.label() + "(x/N)";
  f.value = [=](double x) { return std::pow(x, static_cast<double>(s)) * cutoff(x / N); };
  f.deriv = [=](int k, double x) {
    const auto eta = cutoff.derivatives(x / N, k);
    double acc = 0;
    double binom = 1;  // C(k, j)
    for (int j = 0; j <= k && j <= static_cast<int>(s); ++j) {
      // (x^s)^(j) = s!/(s-j)! x^(s-j)
      double falling = 1;
      for (int i = 0; i < j; ++i) falling *= static_cast<double>(s) - i;
      const double mono = falling * std::pow(x, static_cast<double>(s) - j);
      acc += binom * mono * std::pow(N, -(k - j)) * eta[static_cast<std::size_t>(k - j)];
      binom = binom * (k - j) / (j + 1);
    }
    return acc;
  };
  return f;
}

/// f(x) = (1 - x/N)^p on [0, N].
inline SmoothFunctionSpec falling_power(int p, double N) {
  if (p < 1) throw domain_error("falling_power: p must be >= 1");
  if (!(N > 0)) throw domain_error("falling_power: N must be positive");
  SmoothFunctionSpec f;
  f.support_end = N;
  f.order = Cutoff::infinite_smoothness;  // polynomial on the closed support
  f.label = "(1-x/N)^" + std::to_string(p);
  f.value = [=](double x) { return x <= N ? std::pow(1 - x / N, p) : 0.0; };
  f.deriv = [=](int k, double x) {
    if (k > p || x > N) return 0.0;
    double falling = 1;
    for (int i = 0; i < k; ++i) falling *= p - i;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * falling * std::pow(N, -k) * std::pow(1 - x / N, p - k);
  };
  return f;
}

inline SmoothFunctionSpec zero_function(double N) {
  SmoothFunctionSpec f;
  f.support_end = N;
  f.order = Cutoff::infinite_smoothness;
  f.label = "0";
  f.value = [](double) { return 0.0; };
  f.deriv = [](int, double) { return 0.0; };
  return f;
}

namespace detail {

inline double grid_sup(const std::function<double(double)>& g, double lo, double hi, int samples) {
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    best = std::max(best, std::fabs(g(x)));
  }
  return best;
}

}  // namespace detail

struct EMTail {
  double lhs = 0;       // integral - f(0)/2 - sum f(n)
  double integral = 0;  // integral_0^N f
  double series = 0;    // sum_{k=2}^{s+1} B_k/k! f^(k-1)(0)
  double residual = 0;  // lhs - series
  double c_norm = 0;    // grid sup of |f^(s+2)| on [0, N]
  double bound = 0;     // N * c_norm
};

/// Evaluates both sides of the tail identity. N is the integer upper limit;
/// f must vanish with its derivatives up to order s+1 there.
inline EMTail em_tail(const SmoothFunctionSpec& f, long long N, unsigned s, double tol) {
  if (N < 1) throw domain_error("em_tail: N must be >= 1");
  if (s < 1) throw domain_error("em_tail: s must be >= 1");
  if (!(tol > 0)) throw domain_error("em_tail: tol must be positive");
  if (f.order < static_cast<int>(s) + 2) {
    throw domain_error("em_tail: " + f.label + " is not C^" + std::to_string(s + 2));
  }
  const double Nd = static_cast<double>(N);
  double scale = 0;
  for (unsigned k = 0; k <= s + 1; ++k) scale = std::max(scale, std::fabs(f.deriv(static_cast<int>(k), 0.0)));
  for (unsigned k = 0; k <= s + 1; ++k) {
    if (std::fabs(f.deriv(static_cast<int>(k), Nd)) > 1e-12 * std::max(1.0, scale)) {
      throw domain_error("em_tail: " + f.label + " does not vanish to order " + std::to_string(s + 1) +
                         " at N");
    }
  }

  EMTail out;
  std::vector<double> breaks;
  const long long panels = std::min<long long>(N, 64);
  for (long long i = 0; i <= panels; ++i) breaks.push_back(Nd * static_cast<double>(i) / static_cast<double>(panels));
  QuadratureOptions<double> opts;
  opts.abs_tol = tol;
  opts.rel_tol = 1e-13;  // below this the double-precision error estimate is noise
  out.integral = integrate<double>(f.value, breaks, opts).value;

  double sum = 0;
  for (long long n = 1; n <= N; ++n) sum += f.value(static_cast<double>(n));
  out.lhs = out.integral - 0.5 * f.value(0.0) - sum;

  for (unsigned k = 2; k <= s + 1; ++k) {
    const Rational coeff = bernoulli(k) / Rational(factorial(k));
    if (coeff.is_zero()) continue;
    out.series += coeff.to_double() * f.deriv(static_cast<int>(k) - 1, 0.0);
  }
  out.residual = out.lhs - out.series;
  out.c_norm = detail::grid_sup([&](double x) { return f.deriv(static_cast<int>(s) + 2, x); }, 0.0, Nd, 4001);
  out.bound = Nd * out.c_norm;
  return out;
}

/// Grid-sampled sup over [0, N] of |d^{s+2}/dx^{s+2} [x^s eta(x/N)]|, which
/// scales as N^-2.
inline double sup_norm_check(unsigned s, const Cutoff& cutoff, double N, int samples = 8001) {
  if (!cutoff.is_smooth_to(static_cast<int>(s) + 2)) {
    throw domain_error("sup_norm_check: cutoff " + cutoff.label() + " is not C^" + std::to_string(s + 2));
  }
  if (!(N > 0)) throw domain_error("sup_norm_check: N must be positive");
  const auto f = monomial_times_cutoff(s, cutoff, N);
  return detail::grid_sup([&](double x) { return f.deriv(static_cast<int>(s) + 2, x); }, 0.0, N, samples);
}

/// log n! in quad precision: exact factorial for n <= 2000, summed logs above.
inline quad log_factorial(unsigned long long n) {
  using boost::multiprecision::log;
  if (n <= 2000) {
    long long exponent = 0;
    const quad mantissa = to_real<quad>(factorial(n), &exponent);
    return log(mantissa) + quad(exponent) * log(quad(2));
  }
  quad acc = log_factorial(2000);
  for (unsigned long long k = 2001; k <= n; ++k) acc += log(quad(k));
  return acc;
}

inline quad stirling_g_quad(unsigned long long n) {
  using boost::multiprecision::log;
  if (n < 1) throw domain_error("stirling_g: n must be >= 1");
  const quad x = quad(n);
  return log_factorial(n) - (x + quad(0.5)) * log(x) + x - log(two_pi<quad>()) / 2;
}

/// g(n) = log n! - (n + 1/2) log n + n - log(2 pi)/2.
inline double stirling_g(unsigned long long n) { return static_cast<double>(stirling_g_quad(n)); }

/// B_{2m} / (2m (2m-1) n^{2m-1}), exactly.
inline Rational stirling_term(unsigned m, unsigned long long n) {
  if (m < 1) throw domain_error("stirling_term: m must be >= 1");
  if (n < 1) throw domain_error("stirling_term: n must be >= 1");
  const unsigned k = 2 * m;
  const Rational denom = Rational(static_cast<long long>(k) * (k - 1)) *
                         pow(Rational(bigint(n)), static_cast<long long>(k) - 1);
  return bernoulli(k) / denom;
}

struct StirlingSeries {
  Rational exact_value;
  Rational exact_bound;
  double value = 0;
  double bound = 0;
};

/// Partial sum over m = 1..terms and the remainder bound from |B_{2 terms + 2}|.
inline StirlingSeries stirling_series(unsigned long long n, unsigned terms) {
  if (n < 1) throw domain_error("stirling_series: n must be >= 1");
  if (terms < 1) throw domain_error("stirling_series: terms must be >= 1");
  StirlingSeries out;
  for (unsigned m = 1; m <= terms; ++m) out.exact_value = out.exact_value + stirling_term(m, n);
  out.exact_bound = abs(stirling_term(terms + 1, n));
  out.value = out.exact_value.to_double();
  out.bound = out.exact_bound.to_double();
  return out;
}

/// True when |g(n) - series| <= bound, compared at quad precision.
inline bool stirling_bound_holds(unsigned long long n, unsigned terms) {
  const auto series = stirling_series(n, terms);
  const quad gap = abs(stirling_g_quad(n) - series.exact_value.to<quad>());
  return gap <= series.exact_bound.to<quad>();
}

struct DivergenceDemo {
  unsigned long long n = 0;
  unsigned max_terms = 0;
  std::optional<unsigned> growth_index;  // first m with |term_m| > |term_{m-1}|
  std::vector<Rational> terms;           // term_1 .. term_max_terms
  std::vector<double> magnitudes;
};

/// Scans the Stirling terms at fixed n for the onset of growth. An empty
/// growth_index means no growth within max_terms.
inline DivergenceDemo em_divergence_demo(unsigned long long n, unsigned max_terms) {
  if (n < 1) throw domain_error("em_divergence_demo: n must be >= 1");
  if (max_terms < 2) throw domain_error("em_divergence_demo: max_terms must be >= 2");
  DivergenceDemo out;
  out.n = n;
  out.max_terms = max_terms;
  for (unsigned m = 1; m <= max_terms; ++m) {
    out.terms.push_back(stirling_term(m, n));
    out.magnitudes.push_back(std::fabs(out.terms.back().to_double()));
    if (m >= 2 && !out.growth_index && abs(out.terms[m - 1]) > abs(out.terms[m - 2])) {
      out.growth_index = m;
    }
  }
  return out;
}

}  // namespace summa
