#pragma once

// Exact rational arithmetic plus the Bernoulli numbers and special zeta
// values that feed the mass formulas. Everything here is exact; no floating
// point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ssmass {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

// Exact binomial coefficient C(n, k).
inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) * i! / i! at each stage
  }
  return r;
}

// Bernoulli number B_n with the convention B_1 = -1/2.
// Computed from the defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0
// and memoized. Thread safe.
inline Rational bernoulli(unsigned n) {
  static std::vector<Rational> cache{Rational(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    unsigned k = static_cast<unsigned>(cache.size());
    Rational s = 0;
    for (unsigned j = 0; j < k; ++j) s += Rational(binomial(k + 1, j)) * cache[j];
    cache.push_back(-s / (k + 1));
  }
  return cache[n];
}

// zeta(1 - 2k) = -B_{2k} / (2k) for k >= 1, exact.
inline Rational zeta_negative(unsigned k) {
  if (k == 0) throw std::invalid_argument("zeta_negative: k must be >= 1");
  return -bernoulli(2 * k) / Rational(2 * k);
}

}  // namespace ssmass
