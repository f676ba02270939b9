#pragma once

// Exact mass formulas for the supersingular locus in genus <= 2, symplectic
// group orders, local Hecke orbit sizes, and the census of P^1(F_{p^(2m)})
// points by residue degree.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ssmass/rational.hpp"
#include "ssmass/xi.hpp"

namespace ssmass {

namespace detail {

inline std::vector<uint64_t> primes_upto(uint64_t n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<uint64_t> out;
  for (uint64_t i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

inline std::map<uint64_t, unsigned> factorize(uint64_t n) {
  std::map<uint64_t, unsigned> f;
  for (uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1) ++f[n];
  return f;
}

inline int moebius(uint64_t n) {
  int mu = 1;
  for (auto& [pr, e] : factorize(n)) {
    (void)pr;
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline void require_prime(uint64_t p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

}  // namespace detail

struct MassResult {
  Rational value;
  uint64_t p = 0;
  std::string provenance;  // which closed form produced the value
};

inline Int sl2_order(uint64_t q) {
  Int qq(q);
  return qq * (qq * qq - 1);
}

inline Int psl2_order(uint64_t p) {
  uint64_t q = p * p;
  return sl2_order(q) / std::gcd<uint64_t>(2, q - 1);
}

// Mass of the principally polarized superspecial locus in genus g:
//   (-1)^(g(g+1)/2) / 2^g * prod_k zeta(1-2k) * prod_k (p^k + (-1)^k).
// Supported for g <= 2 (the library's scope); the zeta product is exact.
inline MassResult mass_superspecial(unsigned g, uint64_t p) {
  detail::require_prime(p, "mass_superspecial");
  if (g < 1 || g > 2) throw std::invalid_argument("mass_superspecial: g must be 1 or 2");
  Rational zprod = 1;
  for (unsigned k = 1; k <= g; ++k) zprod *= zeta_negative(k);
  Rational eprod = 1;
  for (unsigned k = 1; k <= g; ++k) {
    Int t = 1;
    for (unsigned i = 0; i < k; ++i) t *= p;
    if (k % 2 == 0) t += 1; else t -= 1;  // p^k + (-1)^k
    eprod *= Rational(t);
  }
  unsigned tri = (g * (g + 1) / 2) % 2;
  Rational sign = tri ? Rational(-1) : Rational(1);
  Rational pow2 = 1;
  for (unsigned i = 0; i < g; ++i) pow2 *= 2;
  MassResult r;
  r.value = sign / pow2 * zprod * eprod;
  r.p = p;
  r.provenance = "superspecial principal mass, genus " + std::to_string(g);
  return r;
}

// Mass of the superspecial locus with F-kernel polarization, g = 2D:
// the same zeta factor with prod_{k<=D} (p^(4k-2) - 1) in place of the
// Euler-type product. Only g = 2 is in scope.
inline MassResult mass_superspecial_fkernel(unsigned g, uint64_t p) {
  detail::require_prime(p, "mass_superspecial_fkernel");
  if (g != 2) throw std::invalid_argument("mass_superspecial_fkernel: g must be 2");
  Rational zprod = zeta_negative(1) * zeta_negative(2);
  Int pe = Int(p) * p - 1;  // p^(4k-2) - 1 at k = 1
  Rational sign = -1;       // (-1)^(g(g+1)/2) = (-1)^3
  MassResult r;
  r.value = sign / 4 * zprod * Rational(pe);
  r.p = p;
  r.provenance = "superspecial F-kernel mass, genus 2";
  return r;
}

// Mass strata for genus 2 at a point xi, plus the F-kernel baseline used by
// relative indices.
enum class MassStratum { FKernel, CaseI, CaseII, CaseIII };

inline MassStratum stratum_of(XiCase t) {
  switch (t) {
    case XiCase::I: return MassStratum::CaseI;
    case XiCase::II: return MassStratum::CaseII;
    default: return MassStratum::CaseIII;
  }
}

// Mass of the principally polarized supersingular stratum attached to a
// point of the given case: L_p / 5760 with
//   case I:   L_p = (p - 1)(p^2 + 1)
//   case II:  L_p = (p^2 - 1)(p^4 - p^2)
//   case III: L_p = (p^2 - 1) |PSL_2(F_{p^2})|.
inline MassResult mass_supersingular(uint64_t p, XiCase tag) {
  detail::require_prime(p, "mass_supersingular");
  Int P(p);
  Int lp;
  const char* which;
  switch (tag) {
    case XiCase::I:
      lp = (P - 1) * (P * P + 1);
      which = "supersingular stratum mass, case I";
      break;
    case XiCase::II:
      lp = (P * P - 1) * (P * P * P * P - P * P);
      which = "supersingular stratum mass, case II";
      break;
    default:
      lp = (P * P - 1) * psl2_order(p);
      which = "supersingular stratum mass, case III";
      break;
  }
  MassResult r;
  r.value = Rational(lp) / 5760;
  r.p = p;
  r.provenance = which;
  return r;
}

inline MassResult mass_supersingular(uint64_t p, const XiClass& xc) {
  detail::check(xc.p == p, "mass_supersingular: characteristic mismatch");
  return mass_supersingular(p, xc.tag);
}

inline Rational stratum_mass(uint64_t p, MassStratum s) {
  switch (s) {
    case MassStratum::FKernel: return mass_superspecial_fkernel(2, p).value;
    case MassStratum::CaseI: return mass_supersingular(p, XiCase::I).value;
    case MassStratum::CaseII: return mass_supersingular(p, XiCase::II).value;
    default: return mass_supersingular(p, XiCase::III).value;
  }
}

// Ratio mass(to) / mass(from); an integer for (FKernel, case II/III) where
// it recovers the index of the corresponding stabilizer subgroup.
inline Rational relative_index(MassStratum from, MassStratum to, uint64_t p) {
  return stratum_mass(p, to) / stratum_mass(p, from);
}

inline Rational relative_index(const XiClass& from, const XiClass& to, uint64_t p) {
  detail::check(from.p == p && to.p == p, "relative_index: characteristic mismatch");
  return relative_index(stratum_of(from.tag), stratum_of(to.tag), p);
}

// |Sp_{2g}(Z/N)|, multiplicative over prime powers; for N = l^k,
// |Sp_{2g}(Z/l^k)| = l^((k-1)(2g^2+g)) * l^(g^2) * prod_{i<=g} (l^(2i) - 1).
inline Int sp_group_order(unsigned g, uint64_t N) {
  if (g < 1) throw std::invalid_argument("sp_group_order: g must be >= 1");
  if (N < 2) throw std::invalid_argument("sp_group_order: N must be >= 2");
  Int total = 1;
  for (auto& [l, k] : detail::factorize(N)) {
    Int lf(l);
    Int part = 1;
    for (unsigned e = 0; e < (k - 1) * (2 * g * g + g); ++e) part *= lf;
    for (unsigned e = 0; e < g * g; ++e) part *= lf;
    for (unsigned i = 1; i <= g; ++i) {
      Int l2i = 1;
      for (unsigned e = 0; e < 2 * i; ++e) l2i *= lf;
      part *= l2i - 1;
    }
    total *= part;
  }
  return total;
}

// Size of the mod-N Hecke orbit through a point of the given case:
// |Sp_4(Z/N)| * mass. Requires N >= 3 prime to p; integrality is checked.
inline Int hecke_orbit_size(uint64_t p, uint64_t N, XiCase tag) {
  detail::require_prime(p, "hecke_orbit_size");
  if (N < 3) throw std::invalid_argument("hecke_orbit_size: level must be >= 3");
  if (std::gcd(N, p) != 1) throw std::invalid_argument("hecke_orbit_size: level must be prime to p");
  Rational v = Rational(sp_group_order(2, N)) * mass_supersingular(p, tag).value;
  detail::check(rat_den(v) == 1, "hecke_orbit_size: non-integral orbit size");
  detail::check(rat_num(v) > 0, "hecke_orbit_size: non-positive orbit size");
  return rat_num(v);
}

// Number of points of P^1(F_{p^(2m)}) whose class has residue degree exactly
// d over F_{p^2} (d | m): q + 1 for d = 1, otherwise the necklace-style
// Moebius sum  sum_{e | d} mu(d/e) q^e  with q = p^2.
inline Int census_count(uint64_t p, unsigned d) {
  Int q = Int(p) * p;
  if (d == 1) return q + 1;
  Int total = 0;
  for (unsigned e : detail::divisors(d)) {
    Int qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    total += detail::moebius(d / e) * qe;
  }
  return total;
}

struct CensusRow {
  unsigned degree = 1;
  Int count;
  Rational mass;
  std::optional<Int> orbit_size;  // present when a level was requested
};

inline XiCase case_of_degree(unsigned d) {
  return d == 1 ? XiCase::I : (d == 2 ? XiCase::II : XiCase::III);
}

// One row per divisor d of m, ascending: how many points of P^1(F_{p^(2m)})
// have residue degree d, the mass of their stratum, and optionally the
// mod-level Hecke orbit size.
inline std::vector<CensusRow> census(uint64_t p, unsigned m, std::optional<uint64_t> level = {}) {
  detail::require_prime(p, "census");
  if (m < 1) throw std::invalid_argument("census: m must be >= 1");
  std::vector<CensusRow> rows;
  for (unsigned d : detail::divisors(m)) {
    CensusRow r;
    r.degree = d;
    r.count = census_count(p, d);
    detail::check(r.count >= 0, "census: negative point count");
    r.mass = mass_supersingular(p, case_of_degree(d)).value;
    if (level) r.orbit_size = hecke_orbit_size(p, *level, case_of_degree(d));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ssmass
