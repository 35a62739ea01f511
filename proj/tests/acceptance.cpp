// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "summa/summa.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace summa;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

std::vector<double> doubling(double from, double to) {
  std::vector<double> g;
  for (double N = from; N <= to; N *= 2) g.push_back(N);
  return g;
}

CasimirConfig casimir(double N, Cutoff cutoff = Cutoff::bump(), double lambda = 1) {
  CasimirConfig cfg;
  cfg.N = N;
  cfg.cutoff = cutoff;
  cfg.lambda = lambda;
  return cfg;
}

}  // namespace

int main() {
  constexpr double limit = -1.0 / 360;
  const std::vector<Criterion> criteria = {
      {1, "Bernoulli exactness", 1.0,
       [](Outcome& o) {
         const std::vector<Rational> table = {Rational(1),      Rational(1, 2),   Rational(1, 6),    Rational(0),
                                              Rational(-1, 30), Rational(0),      Rational(1, 42),   Rational(0),
                                              Rational(-1, 30), Rational(0),      Rational(5, 66),   Rational(0),
                                              Rational(-691, 2730)};
         const auto genfun = genfun_coefficients(12);
         for (unsigned k = 0; k <= 12; ++k) {
           o.require(bernoulli(k) == table[k], "B_" + std::to_string(k) + " table");
           o.require(genfun[k] * Rational(factorial(k)) == table[k], "B_" + std::to_string(k) + " genfun");
         }
         o.detail << "B_0..B_12 exact, B_12 = " << bernoulli(12);
       }},
      {2, "Grandi consensus", 1.0,
       [](Outcome& o) {
         const double c = cesaro_sum(grandi_series(), 10000).value;
         const double a = abel_sum(grandi_series()).value;
         const double s = grandi_smoothed(Cutoff::bump(), 1e4);
         for (double v : {c, a, s}) o.require(std::fabs(v - 0.5) <= 2e-4, "within 2e-4 of 1/2");
         o.detail << "cesaro " << c << ", abel " << a << ", smoothed " << s;
       }},
      {3, "Smoothed constants", 10.0,
       [](Outcome& o) {
         const struct {
           unsigned s;
           double from;
           double target;
         } cases[] = {{0, 100, -0.5}, {1, 100, -1.0 / 12}, {5, 200, -1.0 / 252}};
         for (const auto& c : cases) {
           const auto fit = constant_extraction(c.s, Cutoff::bump(), doubling(c.from, 3200));
           o.require(std::fabs(fit.constant - c.target) <= 1e-2 * std::fabs(c.target),
                     "s=" + std::to_string(c.s) + " constant");
           o.require(fit.rate_exponent <= -0.9, "s=" + std::to_string(c.s) + " rate");
           o.detail << "s=" << c.s << ": " << fit.constant << " (rate " << fit.rate_exponent << ") ";
         }
       }},
      {4, "Term-algebra ledger", 1.0,
       [](Outcome& o) {
         int clashes = 0;
         for (const auto& row : term_algebra_ledger()) {
           clashes += row.clash ? 1 : 0;
           if (row.clash) {
             o.require(row.rule_a && *row.rule_a == Rational(-1, 6), "rule A gives -1/6");
             o.require(row.rule_b && *row.rule_b == Rational(-1, 12), "rule B gives -1/12");
             o.detail << row.identity << ": A " << *row.rule_a << ", B " << *row.rule_b << "; ";
           }
         }
         o.require(clashes == 1, "exactly one clash");
         o.detail << clashes << " clash";
       }},
      {5, "Stirling bound", 5.0,
       [](Outcome& o) {
         int checked = 0;
         for (unsigned long long n = 2; n <= 50; ++n) {
           for (unsigned t = 1; t <= 4; ++t) {
             o.require(stirling_bound_holds(n, t), "n=" + std::to_string(n) + " terms=" + std::to_string(t));
             ++checked;
           }
         }
         o.detail << checked << " (n, terms) pairs";
       }},
      {6, "Divergence demo", 1.0,
       [](Outcome& o) {
         const auto demo = em_divergence_demo(1, 10);
         o.require(demo.growth_index && *demo.growth_index == 5, "m* = 5");
         o.require(abs(demo.terms[4]) > abs(demo.terms[3]), "|t_5| > |t_4| exactly");
         o.detail << "m* = " << (demo.growth_index ? std::to_string(*demo.growth_index) : "none") << ", |t_4| = "
                  << abs(demo.terms[3]) << ", |t_5| = " << abs(demo.terms[4]);
       }},
      {7, "Casimir limit", 60.0,
       [&](Outcome& o) {
         const double u = u_t_dimensionless(casimir(800)).value;
         o.require(std::fabs(u - limit) <= 1e-2 * std::fabs(limit), "u_t(N=800) within 1%");
         const double e = energy_density(casimir(400));
         o.require(std::fabs(e + 4.3318e-10) <= 0.02 * 4.3318e-10, "energy within 2%");
         const double f = casimir_force(1e-6, casimir(400));
         const double fc = closed_form_force(1e-6);
         o.require(std::fabs(f - fc) <= 0.01 * std::fabs(fc), "force within 1%");
         o.detail << "u_t " << u << ", E " << e << " J/m^2, F " << f << " N/m^2 (closed " << fc << ")";
       }},
      {8, "Casimir robustness", 120.0,
       [&](Outcome& o) {
         std::vector<double> values;
         for (const Cutoff& c : {Cutoff::bump(), Cutoff::poly(6)}) {
           for (double lambda : {0.5, 1.0, 2.0}) values.push_back(u_t_dimensionless(casimir(400, c, lambda)).value);
         }
         for (double v : values) o.require(std::fabs(v - limit) <= 0.02 * std::fabs(limit), "within 2% of -1/360");
         double prev_step = 0;
         bool grows = true;
         for (double N : {100.0, 200.0, 400.0}) {
           const double a = static_cast<double>(mode_sum_residual(casimir(N, Cutoff::sharp())));
           const double b = static_cast<double>(mode_sum_residual(casimir(2 * N, Cutoff::sharp())));
           grows &= std::fabs(b - a) >= prev_step;
           prev_step = std::fabs(b - a);
         }
         o.require(grows, "sharp run fails to stabilize");
         const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
         o.detail << "smooth range [" << *lo << ", " << *hi << "], sharp |u(800)-u(400)| = " << prev_step;
       }},
      {9, "Derivative identities", 5.0,
       [](Outcome& o) {
         double worst = 0;
         for (const Cutoff& c : {Cutoff::bump(), Cutoff::poly(6)}) {
           const auto cfg = casimir(40, c);
           worst = std::max(worst, derivative_identities(cfg, 5, default_derivative_probes(cfg)).max_relative_deviation);
         }
         o.require(worst <= 1e-4, "max relative deviation <= 1e-4");
         o.require(capital_F_derivative(3, 0.0, casimir(40)) == -2.0, "F'''(0) = -2");
         o.detail << "max relative deviation " << worst;
       }},
      {10, "Optimal truncation", 1.0,
       [](Outcome& o) {
         const unsigned a = optimal_truncation(Rational(1, 137)).N_star;
         const unsigned b = optimal_truncation(Rational(1, 2)).N_star;
         o.require(a >= 136 && a <= 138, "N*(1/137) in {136,137,138}");
         o.require(b == 2, "N*(1/2) = 2");
         o.detail << "N*(1/137) = " << a << ", N*(1/2) = " << b;
       }},
      {11, "Borel check", 1.0,
       [](Outcome& o) {
         const double v = borel_sum(euler_series_coefficients(), 0.1).value;
         const double ref = oracle::euler_series_borel(0.1);
         o.require(std::fabs(v - ref) <= 1e-6, "Euler series within 1e-6");
         const double tol = 1e-10;
         double worst = 0;
         for (double r : {1.0, 0.5, -1.0}) {
           const double x = 0.5;
           worst = std::max(worst, std::fabs(borel_sum(geometric_coefficients(r), x, {tol}).value - 1 / (1 - r * x)));
         }
         o.require(worst <= 10 * tol, "geometric within 10 tol");
         o.detail << "euler " << v << " vs " << ref << ", geometric worst error " << worst;
       }},
      {12, "Delta sequence", 5.0,
       [](Outcome& o) {
         const auto phi = bump_test_function(0.0, 1.0);
         double prev = INFINITY;
         for (int j : {25, 50, 100, 200}) {
           const double err = std::fabs(delta_pairing(j, phi, 1e-12) - phi.value(0.0));
           o.require(err < prev, "monotone at j=" + std::to_string(j));
           prev = err;
           o.detail << "j=" << j << ": " << err << " ";
         }
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > c.budget_seconds) {
      o.pass = false;
      o.detail << " [over time budget " << c.budget_seconds << " s]";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s [%2d] %-22s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
                o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
