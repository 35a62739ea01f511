#pragma once

// Floating types used throughout the library.
//
// Most public entry points return double. The computations that subtract
// two large, nearly equal quantities (smoothed sums minus their Mellin
// growth term, the Casimir residual sum) run internally in quad precision.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <type_traits>

namespace summa {

using quad = boost::multiprecision::float128;

template <class Real>
inline constexpr bool is_real_v =
    std::is_floating_point_v<Real> || std::is_same_v<Real, quad>;

template <class Real>
concept RealType = is_real_v<Real>;

/// Parse a decimal literal at the full precision of Real.
template <RealType Real>
Real parse_real(const char* text) {
  if constexpr (std::is_same_v<Real, float>) {
    return std::strtof(text, nullptr);
  } else if constexpr (std::is_same_v<Real, double>) {
    return std::strtod(text, nullptr);
  } else if constexpr (std::is_same_v<Real, long double>) {
    return std::strtold(text, nullptr);
  } else {
    return Real(text);
  }
}

template <RealType Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <RealType Real>
Real two_pi() {
  return boost::math::constants::two_pi<Real>();
}

template <RealType Real>
Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

/// Largest w for which exp(-w) is still a normal number of type Real.
template <RealType Real>
Real exp_underflow_threshold() {
  using std::log;
  return -log(std::numeric_limits<Real>::min());
}

template <RealType To, RealType From>
To real_cast(const From& x) {
  return static_cast<To>(x);
}

}  // namespace summa
