#pragma once

// Cutoff functions eta on [0, 1] with eta(0+) = 1 and eta(x) = 0 for x >= 1.
//
//   bump    exp(1 - 1/(1 - x^2)), infinitely smooth, flat at x = 1
//   poly:p  (1 - x)^p, p - 1 continuous derivatives at x = 1
//   sharp   the indicator of [0, 1]; kept for contrast runs only

#include "summa/error.hpp"
#include "summa/jet.hpp"
#include "summa/rational.hpp"
#include "summa/exact_core.hpp"
#include "summa/real.hpp"

#include <charconv>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace summa {

class Cutoff {
 public:
  enum class Kind { bump, poly, sharp };

  static constexpr int infinite_smoothness = std::numeric_limits<int>::max();

  static Cutoff bump() { return Cutoff(Kind::bump, 0); }
  static Cutoff poly(int order) {
    if (order < 1) {
      throw domain_error("poly cutoff needs order >= 1 (order 0 is the discontinuous indicator)");
    }
    return Cutoff(Kind::poly, order);
  }
  static Cutoff sharp() { return Cutoff(Kind::sharp, 0); }

  Kind kind() const { return kind_; }
  int poly_order() const { return order_; }

  std::string label() const {
    switch (kind_) {
      case Kind::bump: return "bump";
      case Kind::poly: return "poly:" + std::to_string(order_);
      case Kind::sharp: return "sharp";
    }
    return {};
  }

  /// Number of continuous derivatives on [0, infinity); -1 for the indicator.
  int smoothness_order() const {
    switch (kind_) {
      case Kind::bump: return infinite_smoothness;
      case Kind::poly: return order_ - 1;
      case Kind::sharp: return -1;
    }
    return -1;
  }
  bool is_smooth_to(int k) const { return smoothness_order() >= k; }

  template <RealType Real>
  Real operator()(Real x) const {
    using std::exp;
    using std::pow;
    switch (kind_) {
      case Kind::bump: {
        if (!(x < 1) || !(x > -1)) return Real(0);
        const Real u = 1 - x * x;
        const Real w = 1 / u;
        if (w - 1 > exp_underflow_threshold<Real>()) return Real(0);
        return exp(1 - w);
      }
      case Kind::poly:
        if (!(x < 1)) return Real(0);
        return pow(1 - x, order_);
      case Kind::sharp:
        return (x >= 0 && x <= 1) ? Real(1) : Real(0);
    }
    return Real(0);
  }

  /// eta(x), eta'(x), ..., eta^(kmax)(x).
  template <RealType Real>
  std::vector<Real> derivatives(Real x, int kmax) const {
    using std::pow;
    std::vector<Real> out(static_cast<std::size_t>(kmax) + 1, Real(0));
    switch (kind_) {
      case Kind::bump: {
        if (!(x < 1) || !(x > -1)) return out;
        const std::size_t n = out.size();
        jet::Jet<Real> u(n, Real(0));
        u[0] = 1 - x * x;
        if (n > 1) u[1] = -2 * x;
        if (n > 2) u[2] = Real(-1);
        auto w = jet::reciprocal(u);
        if (w[0] - 1 > exp_underflow_threshold<Real>()) return out;
        for (auto& c : w) c = -c;
        w[0] += 1;
        return jet::to_derivatives(jet::exp(w));
      }
      case Kind::poly: {
        if (!(x < 1)) return out;
        const Real base = 1 - x;
        Real falling = 1;  // p (p-1) ... (p-k+1)
        for (int k = 0; k <= kmax && k <= order_; ++k) {
          const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
          out[static_cast<std::size_t>(k)] = sign * falling * pow(base, order_ - k);
          falling *= Real(order_ - k);
        }
        return out;
      }
      case Kind::sharp:
        out[0] = (*this)(x);
        return out;
    }
    return out;
  }

  template <RealType Real>
  Real deriv(int k, Real x) const {
    return derivatives(x, k)[static_cast<std::size_t>(k)];
  }

  /// Closed-form integral of x^s eta(x) over [0, 1] when one exists.
  std::optional<Rational> exact_mellin(unsigned s) const {
    switch (kind_) {
      case Kind::poly:
        return Rational(factorial(s) * factorial(static_cast<unsigned>(order_)),
                        factorial(s + static_cast<unsigned>(order_) + 1));
      case Kind::sharp:
        return Rational(1, static_cast<long long>(s) + 1);
      case Kind::bump:
        return std::nullopt;
    }
    return std::nullopt;
  }

  friend bool operator==(const Cutoff&, const Cutoff&) = default;

 private:
  Cutoff(Kind k, int order) : kind_(k), order_(order) {}

  Kind kind_;
  int order_;
};

inline Cutoff make_cutoff(std::string_view kind, int order = 0) {
  if (kind == "bump") return Cutoff::bump();
  if (kind == "poly") return Cutoff::poly(order);
  if (kind == "sharp") return Cutoff::sharp();
  throw domain_error("unknown cutoff kind '" + std::string(kind) + "'");
}

/// "bump", "sharp" or "poly:p".
inline Cutoff parse_cutoff(std::string_view spec) {
  if (spec.starts_with("poly:")) {
    const auto digits = spec.substr(5);
    int order = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw domain_error("bad poly cutoff order in '" + std::string(spec) + "'");
    }
    return Cutoff::poly(order);
  }
  return make_cutoff(spec);
}

}  // namespace summa
