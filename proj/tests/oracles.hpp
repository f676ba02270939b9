#pragma once

// Independent brute-force implementations used to validate the library's
// closed forms. Each oracle deliberately avoids the code path it checks:
// Bernoulli numbers come from the Akiyama-Tanigawa scheme instead of the
// defining recurrence, minimal polynomials from a full scan instead of
// Frobenius orbits, group orders from enumeration instead of formulas.

#include <cstdint>
#include <map>
#include <vector>

#include "ssmass/finite_field.hpp"
#include "ssmass/matrix.hpp"
#include "ssmass/rational.hpp"
#include "ssmass/xi.hpp"

namespace oracle {

using ssmass::FFElem;
using ssmass::FieldCtx;
using ssmass::FMat;
using ssmass::Fp2;
using ssmass::Rational;

// Akiyama-Tanigawa: returns B_n with the B_1 = +1/2 convention.
inline Rational bernoulli_at(unsigned n) {
  std::vector<Rational> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
  }
  return a[0];
}

// Minimal polynomial of b over F_{p^2} by scanning all monic polynomials of
// ascending degree and testing b as a root. Returns (degree, coefficients
// c[0..d] with c[d] = 1).
inline std::pair<unsigned, std::vector<Fp2>> minpoly_scan(const FFElem& b) {
  const FieldCtx* K = b.K;
  const ssmass::Fp2Ctx* k = &K->base;
  uint64_t q = K->p * K->p;
  std::vector<FFElem> bpow{FFElem::one(K)};
  for (unsigned e = 1; e <= K->m; ++e) {
    bpow.push_back(bpow.back() * b);
    uint64_t total = 1;
    for (unsigned i = 0; i < e; ++i) total *= q;
    for (uint64_t t = 0; t < total; ++t) {
      uint64_t rest = t;
      FFElem acc = bpow[e];  // monic leading term
      std::vector<Fp2> coeffs(e);
      for (unsigned i = 0; i < e; ++i) {
        coeffs[i] = Fp2::from_index(k, rest % q);
        rest /= q;
        acc = acc + FFElem::embed_fp2(K, coeffs[i]) * bpow[i];
      }
      if (acc.is_zero()) {
        coeffs.push_back(Fp2::one(k));
        return {e, coeffs};
      }
    }
  }
  throw std::logic_error("minpoly_scan: no minimal polynomial found");
}

// Whether g in SL_2(F_{p^2}) stabilizes the line through xi = [a : b],
// evaluated in the big field: g.(a, b) parallel to (a, b).
inline bool stabilizes_line(const FMat& g, const FFElem& a, const FFElem& b) {
  const FieldCtx* K = a.K;
  FFElem g00 = FFElem::embed_fp2(K, g.at(0, 0)), g01 = FFElem::embed_fp2(K, g.at(0, 1));
  FFElem g10 = FFElem::embed_fp2(K, g.at(1, 0)), g11 = FFElem::embed_fp2(K, g.at(1, 1));
  FFElem u = g00 * a + g01 * b;
  FFElem v = g10 * a + g11 * b;
  return (u * b - v * a).is_zero();  // cross product with (a, b)
}

inline uint64_t stabilizer_count(const FieldCtx& K, const FFElem& a, const FFElem& b) {
  uint64_t count = 0;
  for (const auto& g : ssmass::enumerate_sl2(&K.base))
    if (stabilizes_line(g, a, b)) ++count;
  return count;
}

// Census of P^1(F_{p^(2m)}) by exact residue degree over F_{p^2}, counting
// point by point with the scanned minimal polynomial.
inline std::map<unsigned, uint64_t> census_bruteforce(uint64_t p, unsigned m) {
  FieldCtx K = ssmass::make_field(p, m);
  std::map<unsigned, uint64_t> counts;
  counts[1] += 1;  // [0 : 1]
  uint64_t total = 1;
  for (unsigned i = 0; i < 2 * m; ++i) total *= p;
  for (uint64_t idx = 0; idx < total; ++idx) {
    FFElem b = FFElem::from_index(&K, idx);
    counts[minpoly_scan(b).first] += 1;  // point [1 : b]
  }
  return counts;
}

// |SL_2(Z/N)| by enumeration.
inline uint64_t sl2_znz_count(uint64_t N) {
  uint64_t count = 0;
  for (uint64_t a = 0; a < N; ++a)
    for (uint64_t b = 0; b < N; ++b)
      for (uint64_t c = 0; c < N; ++c)
        for (uint64_t d = 0; d < N; ++d)
          if ((a * d + N * N - b * c) % N == 1 % N) ++count;
  return count;
}

}  // namespace oracle
