#pragma once

// Truncated Taylor series arithmetic. A jet of order n holds the n+1
// coefficients c_k = f^(k)(x0) / k! of a function at a point.

#include "summa/real.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace summa::jet {

template <RealType Real>
using Jet = std::vector<Real>;

template <RealType Real>
Jet<Real> multiply(const Jet<Real>& a, const Jet<Real>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Jet<Real> out(n, Real(0));
  for (std::size_t k = 0; k < n; ++k) {
    Real acc = 0;
    for (std::size_t i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    out[k] = acc;
  }
  return out;
}

/// 1/a; requires a[0] != 0.
template <RealType Real>
Jet<Real> reciprocal(const Jet<Real>& a) {
  const std::size_t n = a.size();
  Jet<Real> out(n, Real(0));
  out[0] = Real(1) / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    Real acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc += a[i] * out[k - i];
    out[k] = -acc / a[0];
  }
  return out;
}

/// exp(a), from y' = a' y.
template <RealType Real>
Jet<Real> exp(const Jet<Real>& a) {
  using std::exp;
  const std::size_t n = a.size();
  Jet<Real> out(n, Real(0));
  out[0] = exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    Real acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += Real(static_cast<long long>(j)) * a[j] * out[k - j];
    out[k] = acc / Real(static_cast<long long>(k));
  }
  return out;
}

/// Coefficients -> derivatives (multiply c_k by k!).
template <RealType Real>
std::vector<Real> to_derivatives(Jet<Real> c) {
  Real f = 1;
  for (std::size_t k = 1; k < c.size(); ++k) {
    f *= Real(static_cast<long long>(k));
    c[k] *= f;
  }
  return c;
}

}  // namespace summa::jet
