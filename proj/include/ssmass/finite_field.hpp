#pragma once

// Arithmetic in the tower F_p < F_{p^2} < F_{p^(2m)}.
//
// Both extensions use deterministic moduli: the lexicographically smallest
// irreducible monic polynomial, scanning coefficients low degree first with
// each coefficient running through its field in enumeration order. Two
// contexts built for the same (p, m) are therefore identical, and elements
// from independently built contexts are interoperable.
//
// Elements hold a raw pointer to their context; the context must outlive
// them. Compatibility checks compare context content, not addresses.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ssmass {

namespace detail {

inline void check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t s = a + b;  // a, b < m <= 2^62, no overflow
  return s >= m ? s - m : s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline uint64_t invmod_prime(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("invmod_prime: zero has no inverse");
  return powmod(a, p - 2, p);
}

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// F_{p^2} = F_p[x] / (x^2 + f1 x + f0)

struct Fp2Ctx {
  uint64_t p = 0;
  uint64_t f0 = 0, f1 = 0;    // modulus x^2 + f1 x + f0
  uint64_t sx0 = 0, sx1 = 0;  // sigma(x) = x^p = sx0 + sx1 x
  friend bool operator==(const Fp2Ctx&, const Fp2Ctx&) = default;
};

struct Fp2 {
  const Fp2Ctx* k = nullptr;
  uint64_t c0 = 0, c1 = 0;  // c0 + c1 x

  Fp2() = default;
  Fp2(const Fp2Ctx* ctx, uint64_t a0, uint64_t a1)
      : k(ctx), c0(a0 % ctx->p), c1(a1 % ctx->p) {}

  static Fp2 zero(const Fp2Ctx* ctx) { return {ctx, 0, 0}; }
  static Fp2 one(const Fp2Ctx* ctx) { return {ctx, 1, 0}; }
  static Fp2 gen(const Fp2Ctx* ctx) { return {ctx, 0, 1}; }

  static Fp2 scalar(const Fp2Ctx* ctx, int64_t v) {
    int64_t p = static_cast<int64_t>(ctx->p);
    int64_t r = v % p;
    if (r < 0) r += p;
    return {ctx, static_cast<uint64_t>(r), 0};
  }

  // Enumeration order: index i maps to (i mod p) + (i div p) x.
  static Fp2 from_index(const Fp2Ctx* ctx, uint64_t i) {
    return {ctx, i % ctx->p, (i / ctx->p) % ctx->p};
  }
  uint64_t index() const { return c0 + c1 * k->p; }

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  bool is_scalar() const { return c1 == 0; }

  friend Fp2 operator+(const Fp2& a, const Fp2& b) {
    detail::check(*a.k == *b.k, "Fp2: mixed contexts");
    return {a.k, detail::addmod(a.c0, b.c0, a.k->p), detail::addmod(a.c1, b.c1, a.k->p)};
  }
  friend Fp2 operator-(const Fp2& a, const Fp2& b) {
    detail::check(*a.k == *b.k, "Fp2: mixed contexts");
    return {a.k, detail::submod(a.c0, b.c0, a.k->p), detail::submod(a.c1, b.c1, a.k->p)};
  }
  Fp2 operator-() const { return {k, detail::submod(0, c0, k->p), detail::submod(0, c1, k->p)}; }

  friend Fp2 operator*(const Fp2& a, const Fp2& b) {
    detail::check(*a.k == *b.k, "Fp2: mixed contexts");
    uint64_t p = a.k->p;
    uint64_t t = detail::mulmod(a.c1, b.c1, p);  // coefficient of x^2
    uint64_t r0 = detail::submod(detail::mulmod(a.c0, b.c0, p), detail::mulmod(t, a.k->f0, p), p);
    uint64_t r1 = detail::addmod(detail::mulmod(a.c0, b.c1, p), detail::mulmod(a.c1, b.c0, p), p);
    r1 = detail::submod(r1, detail::mulmod(t, a.k->f1, p), p);
    return {a.k, r0, r1};
  }

  friend bool operator==(const Fp2& a, const Fp2& b) {
    detail::check(*a.k == *b.k, "Fp2: mixed contexts");
    return a.c0 == b.c0 && a.c1 == b.c1;
  }

  Fp2 frob() const {  // sigma(c0 + c1 x) = c0 + c1 sigma(x)
    uint64_t p = k->p;
    return {k, detail::addmod(c0, detail::mulmod(c1, k->sx0, p), p), detail::mulmod(c1, k->sx1, p)};
  }

  Fp2 pow(uint64_t e) const {
    Fp2 r = one(k), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  Fp2 inv() const {
    if (is_zero()) throw std::domain_error("Fp2: inverse of zero");
    Fp2 n = *this * frob();  // field norm, lands in F_p
    detail::check(n.is_scalar(), "Fp2: norm not scalar");
    return frob() * Fp2(k, detail::invmod_prime(n.c0, k->p), 0);
  }
};

inline Fp2Ctx make_fp2ctx(uint64_t p) {
  if (!detail::is_prime(p)) throw std::invalid_argument("make_fp2ctx: p must be prime");
  Fp2Ctx k;
  k.p = p;
  // Smallest (f0, f1) in lexicographic order with x^2 + f1 x + f0 irreducible,
  // i.e. without a root in F_p.
  bool found = false;
  for (uint64_t f0 = 0; f0 < p && !found; ++f0)
    for (uint64_t f1 = 0; f1 < p && !found; ++f1) {
      bool has_root = false;
      for (uint64_t r = 0; r < p && !has_root; ++r) {
        uint64_t v = detail::addmod(detail::addmod(detail::mulmod(r, r, p), detail::mulmod(f1, r, p), p), f0, p);
        has_root = (v == 0);
      }
      if (!has_root) {
        k.f0 = f0;
        k.f1 = f1;
        found = true;
      }
    }
  detail::check(found, "make_fp2ctx: no irreducible quadratic found");

  // sigma(x) = x^p, computed by square and multiply in F_p[x]/(f).
  auto mul = [&](std::array<uint64_t, 2> a, std::array<uint64_t, 2> b) {
    uint64_t t = detail::mulmod(a[1], b[1], p);
    uint64_t r0 = detail::submod(detail::mulmod(a[0], b[0], p), detail::mulmod(t, k.f0, p), p);
    uint64_t r1 = detail::addmod(detail::mulmod(a[0], b[1], p), detail::mulmod(a[1], b[0], p), p);
    r1 = detail::submod(r1, detail::mulmod(t, k.f1, p), p);
    return std::array<uint64_t, 2>{r0, r1};
  };
  std::array<uint64_t, 2> r{1, 0}, b{0, 1};
  uint64_t e = p;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  k.sx0 = r[0];
  k.sx1 = r[1];

  detail::check(!(k.sx0 == 0 && k.sx1 == 1), "make_fp2ctx: Frobenius fixes x");
  // sigma(sigma(x)) = sx0 + sx1 sigma(x) must equal x.
  uint64_t t0 = detail::addmod(k.sx0, detail::mulmod(k.sx1, k.sx0, p), p);
  uint64_t t1 = detail::mulmod(k.sx1, k.sx1, p);
  detail::check(t0 == 0 && t1 == 1, "make_fp2ctx: Frobenius not an involution");
  return k;
}

// First y (in enumeration order) with y + sigma(y) = c. The Artin-Schreier
// style trace equation is always solvable: the trace F_{p^2} -> F_p is onto
// and c is required to be scalar.
inline Fp2 trace_solve(const Fp2Ctx* k, const Fp2& c) {
  detail::check(*k == *c.k, "trace_solve: mixed contexts");
  if (!c.is_scalar()) throw std::invalid_argument("trace_solve: c must lie in F_p");
  for (uint64_t i = 0; i < k->p * k->p; ++i) {
    Fp2 y = Fp2::from_index(k, i);
    if (y + y.frob() == c) return y;
  }
  throw std::logic_error("trace_solve: no solution (trace not onto?)");
}

// ---------------------------------------------------------------------------
// F_{p^(2m)} = F_{p^2}[y] / (g), g monic of degree m.

struct FieldCtx {
  uint64_t p = 0;
  unsigned m = 1;
  Fp2Ctx base;
  // g = y^m + sum_j glow[j] y^j with glow[j] packed as (c0, c1) over F_{p^2}.
  std::vector<std::array<uint64_t, 2>> glow;

  // Contexts are canonical per (p, m); comparing the parameters suffices.
  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p == b.p && a.m == b.m;
  }
};

namespace detail {

// Dense polynomials over F_{p^2}, coefficient i of y^i, no trailing zeros.
using F2Poly = std::vector<Fp2>;

inline void poly_trim(F2Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline int poly_deg(const F2Poly& a) { return static_cast<int>(a.size()) - 1; }

inline F2Poly poly_add(const F2Poly& a, const F2Poly& b) {
  const Fp2Ctx* k = a.empty() ? (b.empty() ? nullptr : b[0].k) : a[0].k;
  F2Poly r(std::max(a.size(), b.size()), Fp2::zero(k));
  for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  poly_trim(r);
  return r;
}

inline F2Poly poly_sub(const F2Poly& a, const F2Poly& b) {
  F2Poly nb = b;
  for (auto& c : nb) c = -c;
  return poly_add(a, nb);
}

inline F2Poly poly_mul(const F2Poly& a, const F2Poly& b) {
  if (a.empty() || b.empty()) return {};
  F2Poly r(a.size() + b.size() - 1, Fp2::zero(a[0].k));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  poly_trim(r);
  return r;
}

inline F2Poly poly_rem(F2Poly a, const F2Poly& b) {
  check(!b.empty(), "poly_rem: division by zero polynomial");
  Fp2 lead_inv = b.back().inv();
  while (poly_deg(a) >= poly_deg(b)) {
    Fp2 q = a.back() * lead_inv;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - q * b[i];
    poly_trim(a);
  }
  return a;
}

inline F2Poly poly_gcd(F2Poly a, F2Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    F2Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {  // make monic for stable comparisons
    Fp2 li = a.back().inv();
    for (auto& c : a) c = c * li;
  }
  return a;
}

inline F2Poly poly_powmod(F2Poly base, uint64_t e, const F2Poly& mod, const Fp2Ctx* k) {
  F2Poly r{Fp2::one(k)};
  base = poly_rem(std::move(base), mod);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base), mod);
    base = poly_rem(poly_mul(base, base), mod);
    e >>= 1;
  }
  return r;
}

// Rabin irreducibility test over F_q, q = p^2.
inline bool poly_irreducible(const F2Poly& f, const Fp2Ctx* k) {
  int d = poly_deg(f);
  check(d >= 1 && f.back() == Fp2::one(k), "poly_irreducible: need monic, degree >= 1");
  if (d == 1) return true;
  uint64_t q = k->p * k->p;
  F2Poly y{Fp2::zero(k), Fp2::one(k)};
  std::vector<F2Poly> frob_pows(d + 1);  // frob_pows[i] = y^(q^i) mod f
  frob_pows[0] = y;
  for (int i = 1; i <= d; ++i) frob_pows[i] = poly_powmod(frob_pows[i - 1], q, f, k);
  if (!(poly_sub(frob_pows[d], y).empty())) return false;
  int n = d;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    while (n % r == 0) n /= r;
    F2Poly g = poly_gcd(poly_sub(frob_pows[d / r], y), f);
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

}  // namespace detail

struct FFElem {
  const FieldCtx* K = nullptr;
  // 2m coefficients over F_p; c[i + 2j] multiplies x^i y^j.
  std::vector<uint64_t> c;

  FFElem() = default;
  explicit FFElem(const FieldCtx* ctx) : K(ctx), c(2 * ctx->m, 0) {}
  FFElem(const FieldCtx* ctx, std::vector<uint64_t> coeffs) : K(ctx), c(std::move(coeffs)) {
    detail::check(c.size() == 2 * ctx->m, "FFElem: wrong coefficient count");
    for (auto& v : c) v %= ctx->p;
  }

  static FFElem zero(const FieldCtx* K) { return FFElem(K); }
  static FFElem one(const FieldCtx* K) {
    FFElem e(K);
    e.c[0] = 1;
    return e;
  }
  static FFElem gen_x(const FieldCtx* K) {
    FFElem e(K);
    e.c[1] = 1;
    return e;
  }
  static FFElem gen_y(const FieldCtx* K) {
    detail::check(K->m >= 2, "gen_y: tower step needs m >= 2");
    FFElem e(K);
    e.c[2] = 1;
    return e;
  }
  static FFElem scalar(const FieldCtx* K, int64_t v) {
    FFElem e(K);
    int64_t p = static_cast<int64_t>(K->p);
    int64_t r = v % p;
    if (r < 0) r += p;
    e.c[0] = static_cast<uint64_t>(r);
    return e;
  }
  static FFElem embed_fp2(const FieldCtx* K, const Fp2& v) {
    detail::check(K->base == *v.k, "embed_fp2: base context mismatch");
    FFElem e(K);
    e.c[0] = v.c0;
    e.c[1] = v.c1;
    return e;
  }

  // Enumeration order: base-p digits, c[0] fastest.
  static FFElem from_index(const FieldCtx* K, uint64_t idx) {
    FFElem e(K);
    for (unsigned i = 0; i < 2 * K->m; ++i) {
      e.c[i] = idx % K->p;
      idx /= K->p;
    }
    return e;
  }
  uint64_t index() const {
    uint64_t idx = 0;
    for (unsigned i = 2 * K->m; i-- > 0;) idx = idx * K->p + c[i];
    return idx;
  }

  Fp2 ycoeff(unsigned j) const { return Fp2(&K->base, c[2 * j], c[2 * j + 1]); }
  void set_ycoeff(unsigned j, const Fp2& v) {
    c[2 * j] = v.c0;
    c[2 * j + 1] = v.c1;
  }

  bool is_zero() const {
    for (auto v : c)
      if (v) return false;
    return true;
  }
  bool in_fp2() const {
    for (unsigned i = 2; i < c.size(); ++i)
      if (c[i]) return false;
    return true;
  }
  Fp2 as_fp2() const {
    detail::check(in_fp2(), "as_fp2: element not in F_{p^2}");
    return ycoeff(0);
  }

  friend bool operator==(const FFElem& a, const FFElem& b) {
    detail::check(*a.K == *b.K, "FFElem: mixed contexts");
    return a.c == b.c;
  }

  friend FFElem operator+(const FFElem& a, const FFElem& b) {
    detail::check(*a.K == *b.K, "FFElem: mixed contexts");
    FFElem r(a.K);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = detail::addmod(a.c[i], b.c[i], a.K->p);
    return r;
  }
  friend FFElem operator-(const FFElem& a, const FFElem& b) {
    detail::check(*a.K == *b.K, "FFElem: mixed contexts");
    FFElem r(a.K);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = detail::submod(a.c[i], b.c[i], a.K->p);
    return r;
  }
  FFElem operator-() const {
    FFElem r(K);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = detail::submod(0, c[i], K->p);
    return r;
  }

  friend FFElem operator*(const FFElem& a, const FFElem& b) {
    detail::check(*a.K == *b.K, "FFElem: mixed contexts");
    const FieldCtx* K = a.K;
    const Fp2Ctx* k = &K->base;
    unsigned m = K->m;
    std::vector<Fp2> conv(2 * m - 1, Fp2::zero(k));
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) conv[i + j] = conv[i + j] + a.ycoeff(i) * b.ycoeff(j);
    // Fold y^t for t >= m using y^m = -sum_j g_j y^j.
    for (unsigned t = 2 * m - 2; t >= m && t < 2 * m; --t) {
      Fp2 lead = conv[t];
      if (lead.is_zero()) continue;
      conv[t] = Fp2::zero(k);
      for (unsigned j = 0; j < m; ++j) {
        Fp2 gj(k, K->glow[j][0], K->glow[j][1]);
        conv[t - m + j] = conv[t - m + j] - lead * gj;
      }
    }
    FFElem r(K);
    for (unsigned j = 0; j < m; ++j) r.set_ycoeff(j, conv[j]);
    return r;
  }

  FFElem pow(uint64_t e) const {
    FFElem r = one(K), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  FFElem frob() const { return pow(K->p); }          // absolute Frobenius
  FFElem frob_q() const { return frob().frob(); }    // Frobenius over F_{p^2}

  FFElem inv() const;
};

namespace detail {

inline F2Poly ffelem_to_poly(const FFElem& a) {
  F2Poly r;
  for (unsigned j = 0; j < a.K->m; ++j) r.push_back(a.ycoeff(j));
  poly_trim(r);
  return r;
}

inline F2Poly field_modulus(const FieldCtx* K) {
  const Fp2Ctx* k = &K->base;
  F2Poly g;
  for (unsigned j = 0; j < K->m; ++j) g.emplace_back(k, K->glow[j][0], K->glow[j][1]);
  g.push_back(Fp2::one(k));
  return g;
}

}  // namespace detail

inline FFElem FFElem::inv() const {
  if (is_zero()) throw std::domain_error("FFElem: inverse of zero");
  const Fp2Ctx* k = &K->base;
  // Extended Euclid: u * a + v * g = gcd over F_{p^2}[y].
  detail::F2Poly a = detail::ffelem_to_poly(*this);
  detail::F2Poly b = detail::field_modulus(K);
  detail::F2Poly u0{Fp2::one(k)}, u1{};
  while (!b.empty()) {
    // a = q b + r via repeated leading-term elimination, tracking u.
    detail::F2Poly q;
    detail::F2Poly r = a;
    Fp2 lead_inv = b.back().inv();
    while (detail::poly_deg(r) >= detail::poly_deg(b)) {
      size_t shift = r.size() - b.size();
      Fp2 qc = r.back() * lead_inv;
      if (q.size() < shift + 1) q.resize(shift + 1, Fp2::zero(k));
      q[shift] = q[shift] + qc;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - qc * b[i];
      detail::poly_trim(r);
    }
    detail::F2Poly u2 = detail::poly_sub(u0, detail::poly_mul(q, u1));
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  detail::check(detail::poly_deg(a) == 0, "FFElem::inv: gcd not a unit");
  Fp2 gi = a[0].inv();
  FFElem out(K);
  for (size_t j = 0; j < u0.size(); ++j) out.set_ycoeff(static_cast<unsigned>(j), u0[j] * gi);
  return out;
}

inline FieldCtx make_field(uint64_t p, unsigned m) {
  if (!detail::is_prime(p)) throw std::invalid_argument("make_field: p must be prime");
  if (m < 1) throw std::invalid_argument("make_field: m must be >= 1");
  FieldCtx K;
  K.p = p;
  K.m = m;
  K.base = make_fp2ctx(p);
  const Fp2Ctx* k = &K.base;

  // Lexicographically smallest monic irreducible of degree m over F_{p^2}:
  // scan (g_0, ..., g_{m-1}) with g_0 most significant, each coefficient in
  // enumeration order.
  uint64_t q = p * p;
  uint64_t total = 1;
  for (unsigned j = 0; j < m; ++j) total *= q;
  bool found = false;
  for (uint64_t t = 0; t < total && !found; ++t) {
    uint64_t rest = t;
    std::vector<uint64_t> idx(m);
    for (unsigned j = m; j-- > 0;) {  // g_{m-1} varies fastest
      idx[j] = rest % q;
      rest /= q;
    }
    detail::F2Poly g;
    for (unsigned j = 0; j < m; ++j) g.push_back(Fp2::from_index(k, idx[j]));
    g.push_back(Fp2::one(k));
    if (detail::poly_irreducible(g, k)) {
      K.glow.resize(m);
      for (unsigned j = 0; j < m; ++j) K.glow[j] = {g[j].c0, g[j].c1};
      found = true;
    }
  }
  detail::check(found, "make_field: no irreducible modulus found");

  // The embedding F_{p^2} -> F_{p^(2m)} must be a ring homomorphism and
  // commute with Frobenius; check on the generator.
  Fp2 xg = Fp2::gen(k);
  FFElem ex = FFElem::embed_fp2(&K, xg);
  detail::check(ex * ex == FFElem::embed_fp2(&K, xg * xg), "make_field: embedding not multiplicative");
  detail::check(ex.frob() == FFElem::embed_fp2(&K, xg.frob()), "make_field: embedding breaks Frobenius");
  return K;
}

// Minimal polynomial of b over F_{p^2}: monic, returned as coefficient list
// c[0..d] with c[d] = 1. The degree d is the orbit length of b under the
// q-power Frobenius and always divides m.
inline std::pair<unsigned, std::vector<Fp2>> min_poly_over_fp2(const FFElem& b) {
  const FieldCtx* K = b.K;
  unsigned d = 1;
  FFElem r = b.frob_q();
  while (!(r == b)) {
    r = r.frob_q();
    ++d;
    detail::check(d <= K->m, "min_poly_over_fp2: orbit exceeds field degree");
  }
  detail::check(K->m % d == 0, "min_poly_over_fp2: orbit length must divide m");

  // Expand prod_i (Y - b^(q^i)) with coefficients in the tower.
  std::vector<FFElem> poly{FFElem::one(K)};
  FFElem conj = b;
  for (unsigned i = 0; i < d; ++i) {
    std::vector<FFElem> next(poly.size() + 1, FFElem::zero(K));
    for (size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = next[j + 1] + poly[j];
      next[j] = next[j] - conj * poly[j];
    }
    poly = std::move(next);
    conj = conj.frob_q();
  }
  std::vector<Fp2> out;
  out.reserve(poly.size());
  for (const auto& cf : poly) {
    detail::check(cf.in_fp2(), "min_poly_over_fp2: coefficient escapes F_{p^2}");
    out.push_back(cf.as_fp2());
  }
  // Sanity: b is a root.
  FFElem acc = FFElem::zero(K), bp = FFElem::one(K);
  for (const auto& cf : out) {
    acc = acc + FFElem::embed_fp2(K, cf) * bp;
    bp = bp * b;
  }
  detail::check(acc.is_zero(), "min_poly_over_fp2: self check failed");
  return {d, out};
}

}  // namespace ssmass
