#pragma once

// Exact backbone: binomials, factorials, Bernoulli numbers and Faulhaber sums.
//
// Bernoulli numbers follow the B1 = +1/2 convention, i.e. they are the
// Taylor coefficients (times k!) of t e^t / (e^t - 1). The more common
// B1 = -1/2 numbers of t / (e^t - 1) differ only at index 1.

#include "summa/error.hpp"
#include "summa/rational.hpp"

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace summa {

inline bigint binomial(unsigned long long n, unsigned long long k) {
  if (k > n) throw domain_error("binomial: k > n");
  if (k > n - k) k = n - k;
  bigint result = 1;
  for (unsigned long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline bigint factorial(unsigned long long n) {
  bigint result = 1;
  for (unsigned long long i = 2; i <= n; ++i) result *= i;
  return result;
}

namespace detail {

// Memo of B_0..B_K. Readers take a shared lock; extension recomputes under a
// unique lock, so concurrent fills are idempotent.
class BernoulliTable {
 public:
  Rational get(std::size_t k) {
    {
      std::shared_lock lock(mutex_);
      if (k < values_.size()) return values_[k];
    }
    std::unique_lock lock(mutex_);
    extend_to(k);
    return values_[k];
  }

  std::vector<Rational> prefix(std::size_t k) {
    get(k);
    std::shared_lock lock(mutex_);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(k + 1)};
  }

 private:
  // sum_{j=0}^{m-1} C(m, j) B_j = m, solved for B_{m-1}.
  void extend_to(std::size_t k) {
    while (values_.size() <= k) {
      const std::size_t target = values_.size();
      const std::size_t m = target + 1;
      Rational acc(static_cast<long long>(m));
      bigint c = 1;  // C(m, j)
      for (std::size_t j = 0; j < target; ++j) {
        if (!values_[j].is_zero()) acc -= Rational(c) * values_[j];
        c = c * (m - j) / (j + 1);
      }
      // c == C(m, m-1) == m here.
      values_.push_back(acc / Rational(c));
    }
  }

  std::shared_mutex mutex_;
  std::vector<Rational> values_;
};

inline BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace detail

/// B_k with B_1 = +1/2.
inline Rational bernoulli(std::size_t k) { return detail::bernoulli_table().get(k); }

/// B_0..B_k.
inline std::vector<Rational> bernoulli_numbers(std::size_t k) {
  return detail::bernoulli_table().prefix(k);
}

/// First K+1 Taylor coefficients of t e^t / (e^t - 1), by exact power-series
/// division of sum t^j/j! by sum t^j/(j+1)!. Independent of bernoulli().
inline std::vector<Rational> genfun_coefficients(std::size_t K) {
  std::vector<Rational> num(K + 1);
  std::vector<Rational> den(K + 1);
  bigint f = 1;  // j!
  for (std::size_t j = 0; j <= K; ++j) {
    if (j > 0) f *= j;
    num[j] = Rational(bigint(1), f);
    den[j] = Rational(bigint(1), f * (j + 1));
  }
  std::vector<Rational> q(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    Rational acc = num[k];
    for (std::size_t i = 1; i <= k; ++i) acc -= den[i] * q[k - i];
    q[k] = acc / den[0];
  }
  return q;
}

/// sum_{n=1}^{N} n^s through the Bernoulli-coefficient polynomial in N:
/// (1/(s+1)) sum_{j=0}^{s} C(s+1, j) B_j N^{s+1-j}.
inline Rational faulhaber(unsigned s, const bigint& N) {
  if (N < 1) throw domain_error("faulhaber: N must be >= 1");
  const auto B = bernoulli_numbers(s);
  Rational acc;
  bigint c = 1;  // C(s+1, j)
  for (unsigned j = 0; j <= s; ++j) {
    if (!B[j].is_zero()) {
      acc += Rational(c) * B[j] * Rational(boost::multiprecision::pow(N, s + 1 - j));
    }
    c = c * (s + 1 - j) / (j + 1);
  }
  return acc / Rational(static_cast<long long>(s) + 1);
}

inline Rational faulhaber(unsigned s, long long N) { return faulhaber(s, bigint(N)); }

}  // namespace summa
