#pragma once

// Truncated unramified quadratic extension W(F_{p^2}) / p^prec, modeled as
// (Z/p^prec)[x] / (f) where f is the canonical integer lift of the F_{p^2}
// modulus. The Frobenius lift sigma sends x to the Teichmueller-style root
// of f congruent to x^p mod p, computed once by Newton iteration.

#include <cstdint>

#include "ssmass/finite_field.hpp"

namespace ssmass {

struct UnramCtx {
  uint64_t p = 0;
  unsigned prec = 0;
  uint64_t pm = 0;            // p^prec
  uint64_t f0 = 0, f1 = 0;    // modulus x^2 + f1 x + f0, lifted from F_{p^2}
  uint64_t sx0 = 0, sx1 = 0;  // sigma(x) mod p^prec
  Fp2Ctx residue;

  // Canonical per (p, prec).
  friend bool operator==(const UnramCtx& a, const UnramCtx& b) {
    return a.p == b.p && a.prec == b.prec;
  }
};

struct UnramElem {
  const UnramCtx* R = nullptr;
  uint64_t a0 = 0, a1 = 0;  // a0 + a1 x, both mod p^prec

  UnramElem() = default;
  UnramElem(const UnramCtx* ctx, uint64_t v0, uint64_t v1)
      : R(ctx), a0(v0 % ctx->pm), a1(v1 % ctx->pm) {}

  static UnramElem zero(const UnramCtx* R) { return {R, 0, 0}; }
  static UnramElem one(const UnramCtx* R) { return {R, 1, 0}; }
  static UnramElem scalar(const UnramCtx* R, int64_t v) {
    int64_t m = static_cast<int64_t>(R->pm);
    int64_t r = v % m;
    if (r < 0) r += m;
    return {R, static_cast<uint64_t>(r), 0};
  }
  // Canonical lift: digits in [0, p).
  static UnramElem from_fp2_lift(const UnramCtx* R, const Fp2& v) {
    detail::check(R->residue == *v.k, "from_fp2_lift: residue mismatch");
    return {R, v.c0, v.c1};
  }

  bool is_zero() const { return a0 == 0 && a1 == 0; }

  friend bool operator==(const UnramElem& a, const UnramElem& b) {
    detail::check(*a.R == *b.R, "UnramElem: mixed contexts");
    return a.a0 == b.a0 && a.a1 == b.a1;
  }

  friend UnramElem operator+(const UnramElem& a, const UnramElem& b) {
    detail::check(*a.R == *b.R, "UnramElem: mixed contexts");
    return {a.R, detail::addmod(a.a0, b.a0, a.R->pm), detail::addmod(a.a1, b.a1, a.R->pm)};
  }
  friend UnramElem operator-(const UnramElem& a, const UnramElem& b) {
    detail::check(*a.R == *b.R, "UnramElem: mixed contexts");
    return {a.R, detail::submod(a.a0, b.a0, a.R->pm), detail::submod(a.a1, b.a1, a.R->pm)};
  }
  UnramElem operator-() const {
    return {R, detail::submod(0, a0, R->pm), detail::submod(0, a1, R->pm)};
  }

  friend UnramElem operator*(const UnramElem& a, const UnramElem& b) {
    detail::check(*a.R == *b.R, "UnramElem: mixed contexts");
    uint64_t m = a.R->pm;
    uint64_t t = detail::mulmod(a.a1, b.a1, m);
    uint64_t r0 = detail::submod(detail::mulmod(a.a0, b.a0, m), detail::mulmod(t, a.R->f0, m), m);
    uint64_t r1 = detail::addmod(detail::mulmod(a.a0, b.a1, m), detail::mulmod(a.a1, b.a0, m), m);
    r1 = detail::submod(r1, detail::mulmod(t, a.R->f1, m), m);
    return {a.R, r0, r1};
  }

  UnramElem frob() const {  // a0 + a1 sigma(x)
    uint64_t m = R->pm;
    return {R, detail::addmod(a0, detail::mulmod(a1, R->sx0, m), m), detail::mulmod(a1, R->sx1, m)};
  }

  Fp2 reduce() const { return Fp2(&R->residue, a0 % R->p, a1 % R->p); }

  bool is_unit() const { return !reduce().is_zero(); }

  // p-adic valuation of the representative, saturating at prec.
  unsigned vp() const {
    if (is_zero()) return R->prec;
    auto digits = [&](uint64_t v) {
      unsigned n = 0;
      while (v && v % R->p == 0) {
        v /= R->p;
        ++n;
      }
      return v == 0 ? R->prec : n;
    };
    unsigned v0 = a0 == 0 ? R->prec : digits(a0);
    unsigned v1 = a1 == 0 ? R->prec : digits(a1);
    return v0 < v1 ? v0 : v1;
  }

  // Exact division by p. The top digit of the result is unconstrained by the
  // input precision; callers must only rely on the low prec-1 digits.
  UnramElem div_p() const {
    detail::check(a0 % R->p == 0 && a1 % R->p == 0, "UnramElem: inexact division by p");
    return {R, a0 / R->p, a1 / R->p};
  }

  UnramElem inv() const {
    if (!is_unit()) throw std::domain_error("UnramElem: inverse of non-unit");
    Fp2 ri = reduce().inv();
    UnramElem z = from_fp2_lift(R, ri);
    unsigned iters = 1;
    for (unsigned t = R->prec; t > 1; t = (t + 1) / 2) ++iters;
    UnramElem two = scalar(R, 2);
    for (unsigned i = 0; i < iters; ++i) z = z * (two - *this * z);
    detail::check((*this * z) == one(R), "UnramElem: Newton inversion failed");
    return z;
  }
};

inline UnramCtx make_unram(uint64_t p, unsigned prec) {
  if (!detail::is_prime(p)) throw std::invalid_argument("make_unram: p must be prime");
  if (prec < 1) throw std::invalid_argument("make_unram: prec must be >= 1");
  UnramCtx R;
  R.p = p;
  R.prec = prec;
  unsigned __int128 pm = 1;
  for (unsigned i = 0; i < prec; ++i) {
    pm *= p;
    if (pm > (static_cast<unsigned __int128>(1) << 62))
      throw std::invalid_argument("make_unram: p^prec exceeds 2^62");
  }
  R.pm = static_cast<uint64_t>(pm);
  R.residue = make_fp2ctx(p);
  R.f0 = R.residue.f0;
  R.f1 = R.residue.f1;

  // Newton-lift sigma(x) from its residue: t <- t - f(t)/f'(t), starting at
  // the exact mod-p value. Quadratic convergence, so log2(prec)+1 steps.
  R.sx0 = R.residue.sx0;
  R.sx1 = R.residue.sx1;
  UnramElem t(&R, R.sx0, R.sx1);
  UnramElem f1e = UnramElem::scalar(&R, static_cast<int64_t>(R.f1));
  UnramElem f0e = UnramElem::scalar(&R, static_cast<int64_t>(R.f0));
  unsigned iters = 1;
  for (unsigned s = prec; s > 1; s = (s + 1) / 2) ++iters;
  for (unsigned i = 0; i < iters; ++i) {
    UnramElem ft = t * t + f1e * t + f0e;
    UnramElem dft = t + t + f1e;
    t = t - ft * dft.inv();
  }
  R.sx0 = t.a0;
  R.sx1 = t.a1;

  UnramElem sx(&R, R.sx0, R.sx1);
  detail::check((sx * sx + f1e * sx + f0e).is_zero(), "make_unram: sigma(x) is not a root");
  detail::check(sx.reduce() == Fp2(&R.residue, R.residue.sx0, R.residue.sx1),
                "make_unram: sigma(x) has wrong residue");
  detail::check(sx.frob() == UnramElem(&R, 0, 1), "make_unram: sigma not an involution");
  return R;
}

}  // namespace ssmass
