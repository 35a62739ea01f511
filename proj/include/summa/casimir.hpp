#pragma once

// Casimir energy of perfectly conducting parallel plates from smoothed
// zero-point mode sums.
//
// With mu = lambda / N the mode weight is
//     F(s) = integral_s^{N/lambda} v^2 eta(mu v) dv,
// and the dimensionless residual energy is
//     u = sum_{n>=1} F(n) + F(0)/2 - integral_0^{N/lambda} F(s) ds,
// which tends to -B_4/4! F'''(0) = -1/360 as N grows. The physical energy per
// unit area is pi^2 hbar c / (2 d^3) times u.
//
// u is ~1e-13 of the individual sums at N = 800, so the residual is
// accumulated in quad precision.

#include "summa/cutoff.hpp"
#include "summa/error.hpp"
#include "summa/parallel.hpp"
#include "summa/quadrature.hpp"
#include "summa/real.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <limits>
#include <string>
#include <vector>

namespace summa {

struct CasimirConfig {
  double d = 1e-6;        // plate separation [m]
  double lambda = 1.0;    // pi c / (d omega_a)
  double N = 400.0;       // smoothing scale
  Cutoff cutoff = Cutoff::bump();
  double quad_tol = 1e-28;  // relative to the natural scale (N/lambda)^3 of F
  double hbar = 1.054571817e-34;  // [J s]
  double c = 2.99792458e8;        // [m/s]

  double support_end() const { return N / lambda; }
};

inline void validate(const CasimirConfig& cfg) {
  if (!(cfg.d > 0)) throw domain_error("casimir: d must be positive");
  if (!(cfg.lambda > 0)) throw domain_error("casimir: lambda must be positive");
  if (!(cfg.N > 0)) throw domain_error("casimir: N must be positive");
  if (!(cfg.quad_tol > 0)) throw domain_error("casimir: quad_tol must be positive");
  if (!(cfg.hbar > 0) || !(cfg.c > 0)) throw domain_error("casimir: hbar and c must be positive");
}

/// F(n) by adaptive quadrature; exactly 0 for n >= N/lambda.
template <RealType Real = double>
Real capital_F(Real n, const CasimirConfig& cfg) {
  validate(cfg);
  const Real L = Real(cfg.N) / Real(cfg.lambda);
  if (!(n < L)) return Real(0);
  const Real mu = Real(cfg.lambda) / Real(cfg.N);
  QuadratureOptions<Real> opts;
  // The error estimate itself carries rounding of a few hundred ulps.
  const Real rel = std::max(Real(cfg.quad_tol), Real(256) * std::numeric_limits<Real>::epsilon());
  opts.abs_tol = rel * L * L * L;
  auto integrand = [&](Real v) { return v * v * cfg.cutoff(mu * v); };
  return integrate<Real>(integrand, n, L, opts).value;
}

/// F^(k)(s) from the product and chain rules for k >= 1:
///   F^(k)(s) = -sum_j C(k-1, j) (s^2)^(j) lambda^(k-1-j) g_N^(k-1-j)(lambda s),
/// with g_N(x) = eta(x/N), so that lambda^m g_N^(m)(lambda s) = mu^m eta^(m)(mu s).
/// k = 0 returns capital_F.
template <RealType Real = double>
Real capital_F_derivative(int k, Real s, const CasimirConfig& cfg) {
  if (k < 0) throw domain_error("capital_F_derivative: order must be >= 0");
  if (k == 0) return capital_F<Real>(s, cfg);
  validate(cfg);
  const Real mu = Real(cfg.lambda) / Real(cfg.N);
  const auto eta = cfg.cutoff.derivatives(mu * s, k - 1);
  const Real poly[3] = {s * s, 2 * s, Real(2)};
  Real acc = 0;
  Real binom = 1;  // C(k-1, j)
  for (int j = 0; j <= 2 && j <= k - 1; ++j) {
    const int m = k - 1 - j;
    Real mu_pow = 1;
    for (int i = 0; i < m; ++i) mu_pow *= mu;
    acc += binom * poly[j] * mu_pow * eta[static_cast<std::size_t>(m)];
    binom = binom * Real(k - 1 - j) / Real(j + 1);
  }
  return -acc;
}

namespace detail {

// k-th central difference of f with step h, O(h^2), then one Richardson step.
template <RealType Real, class F>
Real central_derivative(F&& f, int k, Real x, Real h) {
  auto raw = [&](Real step) {
    Real acc = 0;
    Real binom = 1;
    for (int i = 0; i <= k; ++i) {
      const Real offset = (Real(k) / 2 - Real(i)) * step;
      const Real term = binom * f(x + offset);
      acc += (i % 2 == 0) ? term : -term;
      binom = binom * Real(k - i) / Real(i + 1);
    }
    Real hk = 1;
    for (int i = 0; i < k; ++i) hk *= step;
    return acc / hk;
  };
  const Real coarse = raw(h);
  const Real fine = raw(h / 2);
  return (4 * fine - coarse) / 3;
}

}  // namespace detail

struct DerivativeCheck {
  double max_relative_deviation = 0;
  int worst_order = 0;
  double worst_point = 0;
};

/// Compares the closed forms F^(1..order) against finite differences of the
/// quadrature-defined F at each probe point.
inline DerivativeCheck derivative_identities(const CasimirConfig& cfg, int order,
                                             const std::vector<double>& probes) {
  validate(cfg);
  if (order < 1 || order > 5) throw domain_error("derivative_identities: order must be in 1..5");
  if (!cfg.cutoff.is_smooth_to(order)) {
    throw domain_error("derivative_identities: cutoff " + cfg.cutoff.label() + " is not C^" +
                       std::to_string(order));
  }
  CasimirConfig precise = cfg;
  precise.quad_tol = std::min(cfg.quad_tol, 1e-30);
  const quad L = quad(cfg.N) / quad(cfg.lambda);
  auto F = [&](quad s) { return capital_F<quad>(s, precise); };

  DerivativeCheck out;
  for (int k = 1; k <= order; ++k) {
    std::vector<quad> closed;
    quad scale = 0;
    for (double p : probes) {
      closed.push_back(capital_F_derivative<quad>(k, quad(p), precise));
      scale = std::max(scale, abs(closed.back()));
    }
    if (scale == 0) {
      using std::pow;
      scale = pow(L, 3 - k);  // natural magnitude of F^(k)
    }
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const quad s = quad(probes[i]);
      double deviation = 0;
      if (s < L || closed[i] != 0) {
        const quad fd = detail::central_derivative<quad>(F, k, s, quad("0.05"));
        // Pointwise relative, except near a zero of F^(k), where the
        // comparison is against a thousandth of its size on the probe set.
        const quad denom = std::max({abs(closed[i]), abs(fd), scale / 1000});
        deviation = static_cast<double>(abs(closed[i] - fd) / denom);
      }
      if (deviation > out.max_relative_deviation) {
        out.max_relative_deviation = deviation;
        out.worst_order = k;
        out.worst_point = probes[i];
      }
    }
  }
  return out;
}

inline std::vector<double> default_derivative_probes(const CasimirConfig& cfg) {
  const double L = cfg.support_end();
  return {1.0, 0.25 * L, 0.5 * L, 0.75 * L};
}

/// Grid-sampled sup_s |F^(5)(s)| over [0, N/lambda].
inline double sup_F5(const CasimirConfig& cfg, int samples = 4001) {
  validate(cfg);
  const double L = cfg.support_end();
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    const double s = L * static_cast<double>(i) / static_cast<double>(samples - 1);
    best = std::max(best, std::fabs(capital_F_derivative<double>(5, s, cfg)));
  }
  return best;
}

/// The residual sum u without regularity checks; the sharp indicator is
/// allowed here to exhibit the non-convergent contrast. Cell k covers
/// [k, min(k+1, N/lambda)]; the outer integral over a cell [a, b] is
/// (b - a) F(b) + integral_a^b (v - a) v^2 eta(mu v) dv.
inline quad mode_sum_residual(const CasimirConfig& cfg) {
  validate(cfg);
  const quad L = quad(cfg.N) / quad(cfg.lambda);
  const quad mu = quad(cfg.lambda) / quad(cfg.N);
  const auto cells = static_cast<std::size_t>(ceil(L));
  const quad scale = L * L * L;

  std::vector<quad> mass(cells);    // integral of v^2 eta over the cell
  std::vector<quad> moment(cells);  // integral of (v - a) v^2 eta over the cell
  parallel_for(cells, [&](std::size_t k) {
    const quad a = quad(static_cast<long long>(k));
    const quad b = std::min(a + 1, L);
    QuadratureOptions<quad> inner;
    inner.abs_tol = quad(cfg.quad_tol) * scale / 10;
    QuadratureOptions<quad> outer;
    outer.abs_tol = quad(cfg.quad_tol) * scale;
    mass[k] = integrate<quad>([&](quad v) { return v * v * cfg.cutoff(mu * v); }, a, b, inner).value;
    moment[k] =
        integrate<quad>([&](quad v) { return (v - a) * v * v * cfg.cutoff(mu * v); }, a, b, outer).value;
  });

  // F at the integer nodes 0..cells (F(cells) = 0), accumulated from the right.
  std::vector<quad> F(cells + 1, quad(0));
  for (std::size_t k = cells; k-- > 0;) F[k] = F[k + 1] + mass[k];

  std::vector<quad> sum_terms;
  sum_terms.reserve(cells + 1);
  sum_terms.push_back(F[0] / 2);
  for (std::size_t n = 1; n <= cells; ++n) sum_terms.push_back(F[n]);

  std::vector<quad> outer_terms(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const quad a = quad(static_cast<long long>(k));
    const quad b = std::min(a + 1, L);
    const quad Fb = (b == L) ? quad(0) : F[k + 1];
    outer_terms[k] = (b - a) * Fb + moment[k];
  }
  return pairwise_sum(sum_terms) - pairwise_sum(outer_terms);
}

struct ResidualEnergy {
  double value = 0;           // u at scale N
  double error_estimate = 0;  // |u(N) - u(N/2)|
};

inline void require_casimir_regularity(const CasimirConfig& cfg) {
  validate(cfg);
  if (!cfg.cutoff.is_smooth_to(5)) {
    throw domain_error("casimir: cutoff " + cfg.cutoff.label() + " is not C^5");
  }
  if (cfg.N < 10) throw domain_error("casimir: N must be >= 10");
}

/// Dimensionless residual energy with its N vs N/2 error estimate.
inline ResidualEnergy u_t_dimensionless(const CasimirConfig& cfg) {
  require_casimir_regularity(cfg);
  CasimirConfig half = cfg;
  half.N = cfg.N / 2;
  const quad full = mode_sum_residual(cfg);
  const quad coarse = mode_sum_residual(half);
  return {static_cast<double>(full), static_cast<double>(abs(full - coarse))};
}

/// pi^2 hbar c / (2 d^3).
inline double energy_prefactor(double d, double hbar, double c) {
  return std::numbers::pi * std::numbers::pi * hbar * c / (2 * d * d * d);
}

/// Energy per unit area [J/m^2].
inline double energy_density(const CasimirConfig& cfg) {
  require_casimir_regularity(cfg);
  return energy_prefactor(cfg.d, cfg.hbar, cfg.c) * static_cast<double>(mode_sum_residual(cfg));
}

/// -pi^2 hbar c / (720 d^3).
inline double closed_form_energy(double d, double hbar = 1.054571817e-34, double c = 2.99792458e8) {
  return -std::numbers::pi * std::numbers::pi * hbar * c / (720 * d * d * d);
}

/// -pi^2 hbar c / (240 d^4), negative for attraction.
inline double closed_form_force(double d, double hbar = 1.054571817e-34, double c = 2.99792458e8) {
  return -std::numbers::pi * std::numbers::pi * hbar * c / (240 * d * d * d * d);
}

/// Force per unit area [N/m^2] as -dE/dd by central difference with step
/// 1e-3 d. The atomic cutoff frequency is held fixed, so lambda scales as 1/d
/// around the template's value at separation d.
inline double casimir_force(double d, const CasimirConfig& tmpl) {
  if (!(d > 0)) throw domain_error("casimir_force: d must be positive");
  const double step = 1e-3 * d;
  auto at = [&](double sep) {
    CasimirConfig cfg = tmpl;
    cfg.d = sep;
    cfg.lambda = tmpl.lambda * d / sep;
    return energy_density(cfg);
  };
  return -(at(d + step) - at(d - step)) / (2 * step);
}

}  // namespace summa
