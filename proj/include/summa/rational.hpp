#pragma once

#include "summa/error.hpp"
#include "summa/real.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace summa {

using bigint = boost::multiprecision::cpp_int;

/// Round an arbitrary-precision integer to the nearest Real, scaling by a
/// power of two so values beyond the Real exponent range of the mantissa
/// conversion stay exact to the last bit.
template <RealType Real>
Real to_real(const bigint& value, long long* exponent_out = nullptr) {
  using std::ldexp;
  if (value == 0) {
    if (exponent_out) *exponent_out = 0;
    return Real(0);
  }
  const bool negative = value < 0;
  const bigint magnitude = negative ? bigint(-value) : value;
  const long long bits = static_cast<long long>(boost::multiprecision::msb(magnitude)) + 1;
  const long long keep = std::numeric_limits<Real>::digits + 8;
  const long long shift = std::max<long long>(0, bits - keep);
  const bigint top = magnitude >> shift;

  // top fits in keep <= 128 bits: split into two 64-bit limbs.
  const bigint mask = (bigint(1) << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(top & mask);
  const auto hi = static_cast<std::uint64_t>(top >> 64);
  Real mantissa = ldexp(Real(hi), 64) + Real(lo);
  if (negative) mantissa = -mantissa;
  if (exponent_out) {
    *exponent_out = shift;
    return mantissa;
  }
  return ldexp(mantissa, static_cast<int>(shift));
}

/// Exact fraction in canonical form: gcd(|num|, den) == 1 and den >= 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design of arithmetic
  Rational(bigint n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rational(bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Rational(long long n, long long d) : Rational(bigint(n), bigint(d)) {}

  const bigint& numerator() const { return num_; }
  const bigint& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  Rational abs() const { return Rational(num_ < 0 ? bigint(-num_) : num_, den_, canonical_tag{}); }
  Rational reciprocal() const {
    if (num_ == 0) throw domain_error("Rational: reciprocal of zero");
    return num_ < 0 ? Rational(bigint(-den_), bigint(-num_), canonical_tag{})
                    : Rational(den_, num_, canonical_tag{});
  }

  Rational operator-() const { return Rational(bigint(-num_), den_, canonical_tag{}); }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const bigint lhs = a.num_ * b.den_;
    const bigint rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q", or "p" when the denominator is one.
  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  template <RealType Real>
  Real to() const {
    using std::ldexp;
    long long en = 0;
    long long ed = 0;
    const Real n = to_real<Real>(num_, &en);
    const Real d = to_real<Real>(den_, &ed);
    return ldexp(n / d, static_cast<int>(en - ed));
  }

  double to_double() const { return to<double>(); }

  /// Parses "p/q", "-7", "0.125", "1e-3", "2.5E+2".
  static Rational parse(std::string_view text);

 private:
  struct canonical_tag {};
  Rational(bigint n, bigint d, canonical_tag) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) throw domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const bigint g = boost::multiprecision::gcd(num_ < 0 ? bigint(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  bigint num_;
  bigint den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational pow(const Rational& base, long long exponent) {
  if (exponent < 0) return pow(base.reciprocal(), -exponent);
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

inline Rational abs(const Rational& r) { return r.abs(); }

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw domain_error("Rational: cannot parse '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  auto parse_integer = [&](std::string_view digits) -> bigint {
    if (digits.empty()) fail();
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    if (start == digits.size()) fail();
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9') fail();
    }
    bigint v(std::string(digits.substr(start)));
    return digits[0] == '-' ? bigint(-v) : v;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }

  // Decimal with optional exponent.
  std::string_view mantissa = text;
  long long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const bigint ev = parse_integer(text.substr(e + 1));
    if (ev > 100000 || ev < -100000) fail();
    exponent = static_cast<long long>(ev);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  bool seen_point = false;
  bool seen_digit = false;
  for (char ch : mantissa) {
    if (ch == '.') {
      if (seen_point) fail();
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) --exponent;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  Rational r{bigint(digits)};
  if (negative) r = -r;
  return r * pow(Rational(10), exponent);
}

}  // namespace summa
