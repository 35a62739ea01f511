#pragma once

// Classical summability: partial sums, Cesaro (C,1) means, Abel limits of
// the power series f_S(t) = sum t^n a_n as t -> 1-, Ramanujan values of
// sum n^s, and zeta(s) through the alternating eta series.

#include "summa/error.hpp"
#include "summa/exact_core.hpp"
#include "summa/extrapolation.hpp"
#include "summa/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace summa {

/// n |-> a_n for n >= 1.
struct SeriesOracle {
  std::string key;
  std::string label;
  std::function<Rational(long long)> exact_term;
  std::function<double(long long)> term;

  // A priori bound |a_n| <= K n^power rho^n, used for tail bounds of f_S(t).
  double bound_K = 1;
  double bound_power = 0;
  double bound_rho = 1;

  // f_S(t) in closed form, valid for t rho < 1.
  std::function<double(double)> abel_closed_form;
  std::string abel_closed_form_label;

  std::optional<unsigned> monomial_exponent;  // a_n = n^s
  std::optional<int> alternating_exponent;    // a_n = (-1)^{n-1} n^{-s}
};

namespace detail {

// Eulerian numbers A(m, k), k = 0..m-1.
inline std::vector<double> eulerian_row(unsigned m) {
  std::vector<double> row;
  for (unsigned k = 0; k < m; ++k) {
    bigint acc = 0;
    for (unsigned j = 0; j <= k; ++j) {
      bigint p = 1;
      for (unsigned i = 0; i < m; ++i) p *= (k + 1 - j);
      const bigint c = binomial(m + 1, j) * p;
      acc += (j % 2 == 0) ? c : bigint(-c);
    }
    row.push_back(static_cast<double>(acc));
  }
  return row;
}

// Li_{-m}(x) = sum_{n>=1} n^m x^n for |x| < 1.
inline double polylog_negative(unsigned m, double x) {
  if (m == 0) return x / (1 - x);
  const auto row = eulerian_row(m);
  double poly = 0;
  for (std::size_t k = row.size(); k-- > 0;) poly = poly * x + row[k];
  return x * poly / std::pow(1 - x, static_cast<double>(m) + 1);
}

inline Rational signed_unit(long long n) { return Rational((n % 2 == 1) ? 1 : -1); }

inline int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw domain_error("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace detail

inline SeriesOracle monomial_series(unsigned s) {
  SeriesOracle o;
  o.key = s == 0 ? "S0" : s == 1 ? "S1" : "monomial:" + std::to_string(s);
  o.label = s == 0 ? "1+1+1+..." : s == 1 ? "1+2+3+..." : "sum n^" + std::to_string(s);
  o.exact_term = [s](long long n) { return pow(Rational(n), s); };
  o.term = [s](long long n) { return std::pow(static_cast<double>(n), static_cast<double>(s)); };
  o.bound_power = s;
  o.abel_closed_form = [s](double t) { return detail::polylog_negative(s, t); };
  o.abel_closed_form_label = "Li_{-" + std::to_string(s) + "}(t)";
  o.monomial_exponent = s;
  return o;
}

/// sum (-1)^{n-1} n^{-s}; s = 0 is Grandi's series.
inline SeriesOracle alternating_zeta_series(int s) {
  SeriesOracle o;
  o.key = s == 0 ? "grandi" : "alt-zeta:" + std::to_string(s);
  o.label = s == 0 ? "1-1+1-1+..." : "sum (-1)^(n-1) n^(" + std::to_string(-s) + ")";
  o.exact_term = [s](long long n) { return detail::signed_unit(n) * pow(Rational(n), -s); };
  o.term = [s](long long n) {
    const double mag = std::pow(static_cast<double>(n), -static_cast<double>(s));
    return (n % 2 == 1) ? mag : -mag;
  };
  o.bound_power = -s;
  if (s <= 0) {
    const unsigned m = static_cast<unsigned>(-s);
    o.abel_closed_form = [m](double t) { return -detail::polylog_negative(m, -t); };
    o.abel_closed_form_label = "-Li_{-" + std::to_string(m) + "}(-t)";
  }
  o.alternating_exponent = s;
  return o;
}

inline SeriesOracle grandi_series() { return alternating_zeta_series(0); }

/// sum_{n>=1} r^n.
inline SeriesOracle geometric_series(const Rational& r) {
  SeriesOracle o;
  o.key = "geometric:" + r.str();
  o.label = "sum (" + r.str() + ")^n";
  o.exact_term = [r](long long n) { return pow(r, n); };
  const double rd = r.to_double();
  o.term = [rd](long long n) { return std::pow(rd, static_cast<double>(n)); };
  o.bound_rho = std::fabs(rd);
  o.abel_closed_form = [rd](double t) { return rd * t / (1 - rd * t); };
  o.abel_closed_form_label = "r t / (1 - r t)";
  return o;
}

inline SeriesOracle zero_series() {
  SeriesOracle o;
  o.key = "zero";
  o.label = "0+0+0+...";
  o.exact_term = [](long long) { return Rational(0); };
  o.term = [](long long) { return 0.0; };
  o.bound_K = 0;
  o.abel_closed_form = [](double) { return 0.0; };
  o.abel_closed_form_label = "0";
  return o;
}

/// Catalog lookup: S0, S1, grandi, zero, monomial:s, alt-zeta:s, geometric:r.
inline SeriesOracle series_from_key(std::string_view key) {
  if (key == "S0") return monomial_series(0);
  if (key == "S1") return monomial_series(1);
  if (key == "grandi") return grandi_series();
  if (key == "zero") return zero_series();
  if (key.starts_with("monomial:")) {
    const int s = detail::parse_int(key.substr(9), "monomial exponent");
    if (s < 0) throw domain_error("monomial exponent must be >= 0");
    return monomial_series(static_cast<unsigned>(s));
  }
  if (key.starts_with("alt-zeta:")) return alternating_zeta_series(detail::parse_int(key.substr(9), "alt-zeta exponent"));
  if (key.starts_with("geometric:")) return geometric_series(Rational::parse(key.substr(10)));
  throw domain_error("unknown series key '" + std::string(key) + "'");
}

inline std::vector<std::string> catalog_keys() {
  return {"S0", "S1", "grandi", "zero", "monomial:s", "alt-zeta:s", "geometric:r"};
}

enum class Method { partial, cesaro, abel, ramanujan, zeta_eta };
enum class Verdict { finite, divergent, oscillating };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::partial: return "partial";
    case Method::cesaro: return "cesaro";
    case Method::abel: return "abel";
    case Method::ramanujan: return "ramanujan";
    case Method::zeta_eta: return "zeta-eta";
  }
  return {};
}

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::finite: return "finite";
    case Verdict::divergent: return "divergent";
    case Verdict::oscillating: return "oscillating-no-limit";
  }
  return {};
}

struct SummationOutcome {
  Method method = Method::partial;
  Verdict verdict = Verdict::oscillating;
  double value = 0;                   // meaningful for finite verdicts
  std::optional<Rational> exact;      // set when the method is exact
  double error_estimate = 0;
  long long terms_used = 0;           // n for Cesaro, largest inner count for Abel
  std::vector<double> schedule;       // t_k for Abel
  std::vector<double> samples;        // sigma_m tail for Cesaro, f_S(t_k) for Abel
  std::string note;

  bool finite() const { return verdict == Verdict::finite; }
};

/// Exact sum_{n=1}^{N} a_n.
inline Rational partial_sum(const SeriesOracle& series, long long N) {
  if (N < 1) throw domain_error("partial_sum: N must be >= 1");
  Rational acc;
  for (long long n = 1; n <= N; ++n) acc = acc + series.exact_term(n);
  return acc;
}

struct CesaroOptions {
  double tol = 1e-3;
};

/// sigma_n = (s_0 + ... + s_n) / (n + 1) with s_0 = 0. Finite when the mean of
/// sigma over the last quarter of the window is within 10 tol of sigma_n;
/// divergent when the means grow monotonically there; oscillating otherwise.
inline SummationOutcome cesaro_sum(const SeriesOracle& series, long long n, CesaroOptions opts = {}) {
  if (n < 2) throw domain_error("cesaro_sum: n must be >= 2");
  SummationOutcome out;
  out.method = Method::cesaro;
  out.terms_used = n;

  std::vector<double> sigma(static_cast<std::size_t>(n) + 1, 0.0);
  detail::CompensatedSum partial;
  detail::CompensatedSum running;
  for (long long m = 1; m <= n; ++m) {
    partial.add(series.term(m));
    running.add(partial.value());
    sigma[static_cast<std::size_t>(m)] = running.value() / static_cast<double>(m + 1);
  }

  const long long start = n - n / 4;
  detail::CompensatedSum window;
  double spread = 0;
  bool growing = true;
  for (long long m = start; m <= n; ++m) {
    const double v = sigma[static_cast<std::size_t>(m)];
    window.add(v);
    spread = std::max(spread, std::fabs(v - sigma[static_cast<std::size_t>(n)]));
    if (m > start && !(std::fabs(v) > std::fabs(sigma[static_cast<std::size_t>(m - 1)]))) growing = false;
    out.samples.push_back(v);
  }
  const double mean = window.value() / static_cast<double>(n - start + 1);
  const double final_value = sigma[static_cast<std::size_t>(n)];
  const double drift = std::fabs(mean - final_value);

  if (drift <= 10 * opts.tol) {
    out.verdict = Verdict::finite;
    out.value = final_value;
    const double halving = std::fabs(final_value - sigma[static_cast<std::size_t>(n / 2)]);
    out.error_estimate = std::max({spread, halving, 1e-16 * std::fabs(final_value)});
  } else if (growing) {
    out.verdict = Verdict::divergent;
    out.note = "Cesaro means grow monotonically";
  } else {
    out.verdict = Verdict::oscillating;
    out.note = "Cesaro means do not stabilize";
  }
  return out;
}

struct AbelOptions {
  std::vector<double> schedule;  // empty: t_k = 1 - 2^-k, k = 3..20
  int extrapolation_order = 2;
  double divergence_cap = 1e12;
  long long max_inner_terms = 400'000'000;
};

inline std::vector<double> default_abel_schedule() {
  std::vector<double> t;
  for (int k = 3; k <= 20; ++k) t.push_back(1 - std::ldexp(1.0, -k));
  return t;
}

/// f_S(t) = sum t^n a_n by the oracle's closed form, else by direct summation
/// until the a priori tail bound drops below the working precision.
inline double abel_generating_function(const SeriesOracle& series, double t, long long max_terms,
                                       long long* terms_used = nullptr) {
  if (!(t > 0 && t < 1)) throw domain_error("abel: t must lie in (0, 1)");
  const double q0 = t * series.bound_rho;
  if (series.bound_K != 0 && !(q0 < 1)) {
    throw convergence_error("abel: f_S(t) diverges at t = " + std::to_string(t) + " for " + series.key);
  }
  if (series.abel_closed_form) {
    if (terms_used) *terms_used = 0;
    return series.abel_closed_form(t);
  }
  detail::CompensatedSum acc;
  double power = 1;
  for (long long n = 1; n <= max_terms; ++n) {
    power *= t;
    acc.add(power * series.term(n));
    // Tail sum_{m>n} K m^p (t rho)^m, bounded geometrically once the ratio
    // q = t rho ((m+1)/m)^max(p,0) is below 1.
    const double nn = static_cast<double>(n + 1);
    const double q = q0 * std::pow(nn / static_cast<double>(n), std::max(series.bound_power, 0.0));
    if (q < 1) {
      const double next = series.bound_K * std::pow(nn, series.bound_power) * std::pow(q0, nn);
      const double tail = next / (1 - q);
      if (tail <= 1e-17 * std::max(1.0, std::fabs(acc.value()))) {
        if (terms_used) *terms_used = n;
        return acc.value();
      }
    }
  }
  throw convergence_error("abel: f_S(" + std::to_string(t) + ") not converged within " +
                          std::to_string(max_terms) + " terms for " + series.key);
}

/// Abel (Euler) summation: f_S on the schedule, then Richardson extrapolation
/// in 1 - t.
inline SummationOutcome abel_sum(const SeriesOracle& series, AbelOptions opts = {}) {
  if (opts.schedule.empty()) opts.schedule = default_abel_schedule();
  const auto& t = opts.schedule;
  if (t.size() < 5) throw domain_error("abel_sum: schedule needs at least 5 points");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0 && t[i] < 1)) throw domain_error("abel_sum: schedule points must lie in (0, 1)");
    if (i > 0 && !(t[i] > t[i - 1])) throw domain_error("abel_sum: schedule must increase");
  }

  SummationOutcome out;
  out.method = Method::abel;
  out.schedule = t;
  for (double tk : t) {
    long long used = 0;
    out.samples.push_back(abel_generating_function(series, tk, opts.max_inner_terms, &used));
    out.terms_used = std::max(out.terms_used, used);
  }

  const std::size_t m = out.samples.size();
  bool growing = true;
  bool contracting = true;
  for (std::size_t i = m - 4; i < m; ++i) {
    if (!(std::fabs(out.samples[i]) > std::fabs(out.samples[i - 1]))) growing = false;
  }
  for (std::size_t i = m - 3; i < m; ++i) {
    const double step = std::fabs(out.samples[i] - out.samples[i - 1]);
    const double prev = std::fabs(out.samples[i - 1] - out.samples[i - 2]);
    if (!(step < 0.75 * prev)) contracting = false;
  }
  const bool capped = std::fabs(out.samples.back()) > opts.divergence_cap;
  if (growing && (!contracting || capped)) {
    out.verdict = Verdict::divergent;
    out.note = "f_S(t) grows without bound as t -> 1-";
    return out;
  }

  // Richardson assumes h = 1 - t halves; for other schedules it is a
  // heuristic and the error estimate says so.
  const auto ex = richardson(out.samples, opts.extrapolation_order, 2.0);
  out.value = ex.value;
  out.error_estimate = std::max(ex.error_estimate, 1e-15 * std::max(1.0, std::fabs(ex.value)));
  if (out.error_estimate <= 1e-3 * std::max(1.0, std::fabs(out.value))) {
    out.verdict = Verdict::finite;
  } else {
    out.verdict = Verdict::oscillating;
    out.note = "extrapolated Abel limit does not settle";
  }
  return out;
}

/// Abel summation under its older name.
inline SummationOutcome euler_sum(const SeriesOracle& series, AbelOptions opts = {}) {
  return abel_sum(series, std::move(opts));
}

/// -B_{s+1}/(s+1), the value assigned to sum n^s.
inline Rational ramanujan_monomial(unsigned s) { return -bernoulli(s + 1) / Rational(static_cast<long long>(s) + 1); }

/// zeta(-m) = -B_{m+1}/(m+1) for m >= 0; the same as ramanujan_monomial.
inline Rational zeta_at_nonpositive(unsigned m) { return ramanujan_monomial(m); }

inline SummationOutcome ramanujan_sum(const SeriesOracle& series) {
  if (!series.monomial_exponent) {
    throw domain_error("ramanujan: only monomial series sum n^s are supported, got " + series.key);
  }
  SummationOutcome out;
  out.method = Method::ramanujan;
  out.verdict = Verdict::finite;
  out.exact = ramanujan_monomial(*series.monomial_exponent);
  out.value = out.exact->to_double();
  out.error_estimate = 0;
  return out;
}

/// zeta(s) = (1 - 2^{1-s})^{-1} sum (-1)^{n-1} n^{-s}: Abel-summed for s <= 0,
/// summed directly with the alternating-series tail bound for s >= 2.
inline SummationOutcome zeta_via_eta(int s) {
  if (s == 1) throw domain_error("zeta_via_eta: s = 1 is the pole of zeta");
  const double factor = 1 - std::ldexp(1.0, 1 - s);
  SummationOutcome out;
  if (s <= 0) {
    out = abel_sum(alternating_zeta_series(s));
  } else {
    out.verdict = Verdict::finite;
    const double target = 1e-13;
    const auto last = static_cast<long long>(std::ceil(std::pow(target, -1.0 / s)));
    detail::CompensatedSum acc;
    // Smallest terms first.
    for (long long n = last; n >= 1; --n) {
      const double mag = std::pow(static_cast<double>(n), -static_cast<double>(s));
      acc.add((n % 2 == 1) ? mag : -mag);
    }
    out.value = acc.value();
    out.terms_used = last;
    out.error_estimate = std::pow(static_cast<double>(last + 1), -static_cast<double>(s));
  }
  out.method = Method::zeta_eta;
  if (out.finite()) {
    out.value /= factor;
    out.error_estimate /= std::fabs(factor);
  }
  return out;
}

/// Series oracle keys map to zeta arguments: sum n^m is zeta(-m).
inline SummationOutcome zeta_eta_sum(const SeriesOracle& series) {
  if (!series.monomial_exponent) {
    throw domain_error("zeta-eta: only monomial series sum n^s are supported, got " + series.key);
  }
  return zeta_via_eta(-static_cast<int>(*series.monomial_exponent));
}

struct LedgerRow {
  std::string identity;
  std::optional<Rational> rule_a;  // term algebra on Ramanujan monomial values
  std::optional<Rational> rule_b;  // position-aware zero interleaving
  bool clash = false;
};

/// The catalog of identities evaluated under both rule sets at s = -1.
inline std::vector<LedgerRow> term_algebra_ledger() {
  const Rational S0 = ramanujan_monomial(0);
  const Rational S1 = ramanujan_monomial(1);
  const Rational zeta0 = zeta_at_nonpositive(0);
  const Rational zeta_m1 = zeta_at_nonpositive(1);

  // Rule set A.
  const Rational evens_a = Rational(2) * S1;                   // 2+4+6+...
  const Rational odds_a = Rational(2) * S1 - S0;               // 1+3+5+...
  const Rational s1p_a = Rational(-1, 3) * (odds_a - evens_a);  // -(1-2+3-4+...)/3

  // Rule set B, from (1 - 2^{-s}) zeta(s) and 2^{-s} zeta(s) at s = -1.
  const Rational two_pow = Rational(2);  // 2^{-s} at s = -1
  const Rational odds_b = (Rational(1) - two_pow) * zeta_m1;  // 1+0+3+0+...
  const Rational evens_b = two_pow * zeta_m1;                  // 0+2+0+4+...
  const Rational s1p_b = Rational(-1, 3) * (odds_b - evens_b);

  std::vector<LedgerRow> rows = {
      {"S0 = 1+1+1+...", S0, zeta0, false},
      {"S1 = 1+2+3+...", S1, zeta_m1, false},
      {"2+4+6+...", evens_a, std::nullopt, false},
      {"1+3+5+...", odds_a, std::nullopt, false},
      {"0+2+0+4+...", std::nullopt, evens_b, false},
      {"1+0+3+0+...", std::nullopt, odds_b, false},
      {"S1' = -(1-2+3-4+...)/3", s1p_a, s1p_b, false},
  };
  for (auto& row : rows) row.clash = row.rule_a && row.rule_b && *row.rule_a != *row.rule_b;
  return rows;
}

}  // namespace summa
