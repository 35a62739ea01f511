#include "summa/euler_maclaurin.hpp"
#include "summa/exact_core.hpp"
#include "summa/smoothed.hpp"

#include "frozen_values.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using summa::Cutoff;
using summa::quad;
using summa::Rational;

TEST(SmoothFunctionSpec, DerivativesMatchFiniteDifferences) {
  const double N = 40;
  for (unsigned s : {0u, 1u, 3u}) {
    const auto f = summa::monomial_times_cutoff(s, Cutoff::bump(), N);
    for (int k = 1; k <= 5; ++k) {
      double sup = 0;
      for (double x = 2; x < 38; x += 1) sup = std::max(sup, std::fabs(f.deriv(k, x)));
      for (double x = 2; x < 38; x += 4) {
        // Central differences on the double-valued f; step suited to k.
        const double h = 0.02 * k;
        const quad fd = oracle::central_difference([&](quad t) { return quad(f.value(static_cast<double>(t))); },
                                                   k, quad(x), quad(h));
        const double exact = f.deriv(k, x);
        // Relative to the largest derivative magnitude on the grid.
        EXPECT_LE(std::fabs(exact - static_cast<double>(fd)), 1e-3 * sup + 1e-10)
            << "s=" << s << " k=" << k << " x=" << x;
      }
    }
  }
}

TEST(SmoothFunctionSpec, FallingPowerDerivatives) {
  const auto f = summa::falling_power(3, 50);
  EXPECT_DOUBLE_EQ(f.value(0), 1.0);
  EXPECT_DOUBLE_EQ(f.deriv(1, 0), -3.0 / 50);
  EXPECT_DOUBLE_EQ(f.deriv(3, 10), -6.0 / (50.0 * 50 * 50));
  EXPECT_EQ(f.deriv(4, 10), 0.0);
  EXPECT_EQ(f.value(50), 0.0);
}

TEST(EMTail, MonomialTimesBump) {
  const auto f = summa::monomial_times_cutoff(1, Cutoff::bump(), 100);
  const auto t = summa::em_tail(f, 100, 1, 1e-10);
  EXPECT_NEAR(t.integral, frozen::bump_mellin[1] * 1e4, 1e-9);
  EXPECT_NEAR(t.series, 1.0 / 12, 1e-15);
  EXPECT_NEAR(t.lhs, 1.0 / 12, 1e-4);
  EXPECT_LE(std::fabs(t.residual), t.bound);
}

TEST(EMTail, ZeroFunction) {
  const auto t = summa::em_tail(summa::zero_function(25), 25, 2, 1e-12);
  EXPECT_EQ(t.lhs, 0.0);
  EXPECT_EQ(t.series, 0.0);
  EXPECT_EQ(t.residual, 0.0);
}

TEST(EMTail, FallingCubicAgainstExactEvaluation) {
  const long long N = 50;
  const auto t = summa::em_tail(summa::falling_power(3, 50), N, 1, 1e-13);
  // lhs = N/4 - 1/2 - sum (1 - n/N)^3, exactly.
  Rational sum;
  for (long long n = 1; n <= N; ++n) sum = sum + summa::pow(Rational(1) - Rational(n, N), 3);
  const Rational lhs = Rational(N, 4) - Rational(1, 2) - sum;
  EXPECT_NEAR(t.lhs, lhs.to_double(), 1e-12);
  EXPECT_NEAR(t.series, (Rational(1, 12) * Rational(-3, N)).to_double(), 1e-16);
  const double bound = static_cast<double>(N) * 6.0 / (50.0 * 50 * 50);
  EXPECT_NEAR(t.bound, bound, 1e-15);
  EXPECT_LE(std::fabs(t.residual), 10 * bound);
}

TEST(EMTail, ClosureReproducesRegularizedConstant) {
  const double N = 100;
  for (unsigned s = 1; s <= 4; ++s) {
    const auto f = summa::monomial_times_cutoff(s, Cutoff::bump(), N);
    const auto t = summa::em_tail(f, 100, s, 1e-6);
    const double C = static_cast<double>(summa::mellin<quad>(Cutoff::bump(), s, quad("1e-30")));
    const double CN = C * std::pow(N, s + 1.0);
    EXPECT_NEAR(t.integral, CN, 1e-12 * CN) << s;
    const double target = (summa::bernoulli(s + 1) / Rational(s + 1)).to_double();
    EXPECT_NEAR(t.series, target, 1e-15) << s;
    // lhs = C N^{s+1} - S_s(eta_N) -> B_{s+1}/(s+1), at the rate of the remainder bound.
    EXPECT_NEAR(t.lhs, target, t.bound) << s;
    EXPECT_LE(std::fabs(t.residual), t.bound) << s;
  }
}

TEST(EMTail, RejectsRoughOrNonVanishingInput) {
  EXPECT_THROW(summa::em_tail(summa::monomial_times_cutoff(1, Cutoff::poly(2), 50), 50, 1, 1e-8),
               summa::domain_error);
  EXPECT_THROW(summa::em_tail(summa::falling_power(1, 50), 50, 1, 1e-8), summa::domain_error);
  EXPECT_THROW(summa::em_tail(summa::monomial_times_cutoff(1, Cutoff::bump(), 100), 50, 1, 1e-8),
               summa::domain_error);
  EXPECT_THROW(summa::em_tail(summa::zero_function(5), 5, 0, 1e-8), summa::domain_error);
}

TEST(SupNorm, ScalesAsInverseSquare) {
  for (unsigned s : {0u, 1u, 2u}) {
    const double a = summa::sup_norm_check(s, Cutoff::bump(), 100);
    const double b = summa::sup_norm_check(s, Cutoff::bump(), 200);
    EXPECT_GE(a / b, 3.5) << s;
    EXPECT_LE(a / b, 4.5) << s;
  }
}

TEST(SupNorm, PolyCubeExample) {
  EXPECT_NEAR(summa::sup_norm_check(0, Cutoff::poly(3), 100), 6e-4, 1e-15);
  EXPECT_THROW(summa::sup_norm_check(0, Cutoff::poly(2), 100), summa::domain_error);
}

TEST(Stirling, Examples) {
  EXPECT_NEAR(summa::stirling_g(10), frozen::stirling_g10, 1e-17);
  EXPECT_NEAR(summa::stirling_g(10), 1.0 / 120 - 1.0 / 360000, 3e-6);
  EXPECT_NEAR(summa::stirling_g(1), frozen::stirling_g1, 1e-16);
  EXPECT_NEAR(summa::stirling_g(1), 1 - 0.5 * std::log(2 * std::numbers::pi), 1e-15);
  for (unsigned long long n : {5ULL, 40ULL, 1000ULL}) {
    EXPECT_NEAR(summa::stirling_g(2 * n) / summa::stirling_g(n), 0.5, 0.025) << n;
  }
}

TEST(Stirling, AgreesWithLgamma) {
  for (unsigned long long n : {3ULL, 17ULL, 1999ULL, 2000ULL, 2001ULL, 5000ULL}) {
    const double lg = std::lgamma(static_cast<double>(n) + 1);
    EXPECT_NEAR(static_cast<double>(summa::log_factorial(n)), lg, 1e-15 * lg + 1e-15) << n;
  }
}

TEST(StirlingSeries, Examples) {
  const auto one = summa::stirling_series(10, 1);
  EXPECT_EQ(one.exact_value, Rational(1, 120));
  EXPECT_EQ(one.exact_bound, Rational(1, 30) / Rational(3 * 4 * 1000));
  const auto two = summa::stirling_series(10, 2);
  EXPECT_EQ(two.exact_value, Rational(1, 120) - Rational(1, 360000));
  EXPECT_EQ(two.exact_bound, Rational(1, 42) / Rational(5 * 6 * 100000));
  EXPECT_TRUE(summa::stirling_bound_holds(2, 4));
}

TEST(StirlingSeries, RemainderBoundHoldsOnGrid) {
  for (unsigned long long n = 2; n <= 50; ++n) {
    for (unsigned terms = 1; terms <= 4; ++terms) EXPECT_TRUE(summa::stirling_bound_holds(n, terms)) << n << "," << terms;
  }
}

TEST(StirlingSeries, Asymptoticity) {
  for (unsigned terms = 1; terms <= 4; ++terms) {
    double previous = std::numeric_limits<double>::infinity();
    for (unsigned long long n : {10ULL, 20ULL, 40ULL, 80ULL}) {
      const auto series = summa::stirling_series(n, terms);
      const quad residual = abs(summa::stirling_g_quad(n) - series.exact_value.to<quad>());
      const quad last = abs(summa::stirling_term(terms, n).to<quad>());
      const double ratio = static_cast<double>(residual / last);
      EXPECT_LT(ratio, previous) << terms << "," << n;
      previous = ratio;
    }
    EXPECT_LT(previous, 1e-3) << terms;
  }
}

TEST(Divergence, Examples) {
  const auto demo = summa::em_divergence_demo(1, 10);
  ASSERT_TRUE(demo.growth_index.has_value());
  EXPECT_EQ(*demo.growth_index, 5u);
  EXPECT_EQ(demo.terms[0], Rational(1, 12));
  EXPECT_EQ(demo.terms[1], Rational(-1, 360));
  EXPECT_EQ(demo.terms[2], Rational(1, 1260));
  EXPECT_GT(abs(demo.terms[4]), abs(demo.terms[3]));
  const auto ten = summa::em_divergence_demo(10, 60);
  ASSERT_TRUE(ten.growth_index.has_value());
  EXPECT_GE(*ten.growth_index, 25u);
  EXPECT_LE(*ten.growth_index, 40u);
}

TEST(Divergence, GrowthIndexTable) {
  for (unsigned long long n = 1; n <= 18; ++n) {
    const auto demo = summa::em_divergence_demo(n, 60);
    ASSERT_TRUE(demo.growth_index.has_value()) << n;
    EXPECT_EQ(*demo.growth_index, frozen::stirling_growth_index[n]) << n;
  }
  // n = 19, 20 need a few more than 60 terms.
  for (unsigned long long n : {19ULL, 20ULL}) {
    EXPECT_FALSE(summa::em_divergence_demo(n, 60).growth_index.has_value()) << n;
    const auto demo = summa::em_divergence_demo(n, 80);
    ASSERT_TRUE(demo.growth_index.has_value()) << n;
    EXPECT_EQ(*demo.growth_index, frozen::stirling_growth_index[n]) << n;
    EXPECT_NEAR(*demo.growth_index, std::numbers::pi * static_cast<double>(n), 4.0);
  }
}

TEST(Divergence, NoGrowthReportedExplicitly) {
  const auto demo = summa::em_divergence_demo(10, 5);
  EXPECT_FALSE(demo.growth_index.has_value());
  EXPECT_EQ(demo.terms.size(), 5u);
  EXPECT_THROW(summa::em_divergence_demo(1, 1), summa::domain_error);
}
