#pragma once

// The maximal order O = W(F_{p^2})<Pi> with Pi^2 = -p and Pi a = sigma(a) Pi,
// truncated at Pi-adic precision N. An element a + b Pi stores both
// coordinates mod p^ceil(N/2); valuations saturate at N.
//
// Matrices over the truncated order carry the conjugate-transpose star
// involution and the Frobenius twist, and hermitian_defect measures how far
// a matrix is from preserving the hermitian form attached to w = (0,-1;1,0).

#include <array>
#include <vector>

#include "ssmass/matrix.hpp"
#include "ssmass/padic.hpp"

namespace ssmass {

struct QuatCtx {
  uint64_t p = 0;
  unsigned pi_prec = 0;  // N
  UnramCtx w;            // coefficient ring at ceil(N/2) p-adic digits

  friend bool operator==(const QuatCtx& a, const QuatCtx& b) {
    return a.p == b.p && a.pi_prec == b.pi_prec;
  }
};

inline QuatCtx make_quat(uint64_t p, unsigned N) {
  if (N < 1) throw std::invalid_argument("make_quat: pi_prec must be >= 1");
  QuatCtx C;
  C.p = p;
  C.pi_prec = N;
  C.w = make_unram(p, (N + 1) / 2);
  return C;
}

struct QuatElem {
  const QuatCtx* C = nullptr;
  UnramElem a, b;  // a + b Pi

  QuatElem() = default;
  QuatElem(const QuatCtx* ctx, UnramElem av, UnramElem bv) : C(ctx), a(av), b(bv) {
    detail::check(*a.R == ctx->w && *b.R == ctx->w, "QuatElem: coefficient ring mismatch");
  }

  static QuatElem zero(const QuatCtx* C) {
    return {C, UnramElem::zero(&C->w), UnramElem::zero(&C->w)};
  }
  static QuatElem one(const QuatCtx* C) {
    return {C, UnramElem::one(&C->w), UnramElem::zero(&C->w)};
  }
  static QuatElem pi(const QuatCtx* C) {
    return {C, UnramElem::zero(&C->w), UnramElem::one(&C->w)};
  }
  static QuatElem scalar(const QuatCtx* C, int64_t v) {
    return {C, UnramElem::scalar(&C->w, v), UnramElem::zero(&C->w)};
  }
  // Canonical lift of (abar, bbar): digits in [0, p), Pi-part bbar.
  static QuatElem from_fp2_pair(const QuatCtx* C, const Fp2& abar, const Fp2& bbar) {
    return {C, UnramElem::from_fp2_lift(&C->w, abar), UnramElem::from_fp2_lift(&C->w, bbar)};
  }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  friend bool operator==(const QuatElem& x, const QuatElem& y) {
    detail::check(*x.C == *y.C, "QuatElem: mixed contexts");
    return x.a == y.a && x.b == y.b;
  }

  friend QuatElem operator+(const QuatElem& x, const QuatElem& y) {
    detail::check(*x.C == *y.C, "QuatElem: mixed contexts");
    return {x.C, x.a + y.a, x.b + y.b};
  }
  friend QuatElem operator-(const QuatElem& x, const QuatElem& y) {
    detail::check(*x.C == *y.C, "QuatElem: mixed contexts");
    return {x.C, x.a - y.a, x.b - y.b};
  }
  QuatElem operator-() const { return {C, -a, -b}; }

  // (a + b Pi)(c + d Pi) = (ac - p b sigma(d)) + (ad + b sigma(c)) Pi.
  friend QuatElem operator*(const QuatElem& x, const QuatElem& y) {
    detail::check(*x.C == *y.C, "QuatElem: mixed contexts");
    UnramElem pe = UnramElem::scalar(&x.C->w, static_cast<int64_t>(x.C->p));
    UnramElem ra = x.a * y.a - pe * (x.b * y.b.frob());
    UnramElem rb = x.a * y.b + x.b * y.a.frob();
    return {x.C, ra, rb};
  }

  // Main involution: (a + b Pi)* = sigma(a) - b Pi.
  QuatElem star() const { return {C, a.frob(), -b}; }

  // Frobenius twist x^(n): conjugation by Pi^n, entrywise sigma for odd n.
  QuatElem twist(unsigned n) const {
    return (n & 1) ? QuatElem{C, a.frob(), b.frob()} : *this;
  }

  // Pi-adic valuation, saturating at pi_prec.
  unsigned valuation() const {
    unsigned va = 2 * a.vp();
    unsigned vb = 2 * b.vp() + 1;
    unsigned v = va < vb ? va : vb;
    return v < C->pi_prec ? v : C->pi_prec;
  }

  // Division by Pi: (a + b Pi) Pi^{-1} = b + (-a/p) Pi, requiring p | a.
  // Coordinates are stored mod p^prec, so the -a/p coordinate is only
  // determined mod p^{prec-1}: div_pi then mul_pi_right returns the input
  // exactly (the undetermined digit is killed by the factor p), while
  // mul_pi_right then div_pi agrees with the input mod Pi^{pi_prec - 1}.
  QuatElem div_pi() const {
    detail::check(a.a0 % C->p == 0 && a.a1 % C->p == 0, "QuatElem: inexact division by Pi");
    return {C, b, -a.div_p()};
  }

  // Right multiplication by Pi: (a + b Pi) Pi = -p b + a Pi.
  QuatElem mul_pi_right() const {
    UnramElem pe = UnramElem::scalar(&C->w, static_cast<int64_t>(C->p));
    return {C, -(pe * b), a};
  }

  Fp2 reduce_mod_pi() const { return a.reduce(); }

  // Image in M_2(W) under the splitting over W(F_{p^2}): row-major
  // (a, -p b; sigma(b), sigma(a)). Multiplicative, and Pi maps to (0,-p;1,0).
  std::array<UnramElem, 4> embed_mat2() const {
    UnramElem pe = UnramElem::scalar(&C->w, static_cast<int64_t>(C->p));
    return {a, -(pe * b), b.frob(), a.frob()};
  }
};

struct QuatMat {
  const QuatCtx* C = nullptr;
  unsigned rows = 0, cols = 0;
  std::vector<QuatElem> e;

  QuatMat() = default;
  QuatMat(const QuatCtx* ctx, unsigned r, unsigned c)
      : C(ctx), rows(r), cols(c), e(r * c, QuatElem::zero(ctx)) {}

  QuatElem& at(unsigned i, unsigned j) { return e[i * cols + j]; }
  const QuatElem& at(unsigned i, unsigned j) const { return e[i * cols + j]; }

  static QuatMat identity(const QuatCtx* C, unsigned n) {
    QuatMat m(C, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = QuatElem::one(C);
    return m;
  }
  static QuatMat wmat(const QuatCtx* C) {
    QuatMat m(C, 2, 2);
    m.at(0, 1) = QuatElem::scalar(C, -1);
    m.at(1, 0) = QuatElem::one(C);
    return m;
  }
  // Canonical lift of a matrix over F_{p^2}: zero Pi-part, digits in [0, p).
  static QuatMat lift(const QuatCtx* C, const FMat& mbar) {
    detail::check(C->w.residue == *mbar.k, "QuatMat::lift: residue mismatch");
    QuatMat m(C, mbar.rows, mbar.cols);
    for (unsigned i = 0; i < mbar.rows; ++i)
      for (unsigned j = 0; j < mbar.cols; ++j)
        m.at(i, j) = QuatElem::from_fp2_pair(C, mbar.at(i, j), Fp2::zero(mbar.k));
    return m;
  }
  // Lift of mbar Pi: zero W-part, Pi-part with digits in [0, p).
  static QuatMat lift_pi(const QuatCtx* C, const FMat& mbar) {
    detail::check(C->w.residue == *mbar.k, "QuatMat::lift_pi: residue mismatch");
    QuatMat m(C, mbar.rows, mbar.cols);
    for (unsigned i = 0; i < mbar.rows; ++i)
      for (unsigned j = 0; j < mbar.cols; ++j)
        m.at(i, j) = QuatElem::from_fp2_pair(C, Fp2::zero(mbar.k), mbar.at(i, j));
    return m;
  }

  bool is_zero() const {
    for (const auto& v : e)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const QuatMat& x, const QuatMat& y) {
    detail::check(*x.C == *y.C, "QuatMat: mixed contexts");
    return x.rows == y.rows && x.cols == y.cols && x.e == y.e;
  }

  friend QuatMat operator+(const QuatMat& x, const QuatMat& y) {
    detail::check(*x.C == *y.C && x.rows == y.rows && x.cols == y.cols, "QuatMat: shape mismatch");
    QuatMat r = x;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] + y.e[i];
    return r;
  }
  friend QuatMat operator-(const QuatMat& x, const QuatMat& y) {
    detail::check(*x.C == *y.C && x.rows == y.rows && x.cols == y.cols, "QuatMat: shape mismatch");
    QuatMat r = x;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] - y.e[i];
    return r;
  }
  QuatMat operator-() const {
    QuatMat r = *this;
    for (auto& v : r.e) v = -v;
    return r;
  }

  friend QuatMat operator*(const QuatMat& x, const QuatMat& y) {
    detail::check(*x.C == *y.C, "QuatMat: mixed contexts");
    detail::check(x.cols == y.rows, "QuatMat: inner dimension mismatch");
    QuatMat r(x.C, x.rows, y.cols);
    for (unsigned i = 0; i < x.rows; ++i)
      for (unsigned j = 0; j < y.cols; ++j) {
        QuatElem s = QuatElem::zero(x.C);
        for (unsigned t = 0; t < x.cols; ++t) s = s + x.at(i, t) * y.at(t, j);
        r.at(i, j) = s;
      }
    return r;
  }

  // Conjugate transpose with the main involution.
  QuatMat star() const {
    QuatMat r(C, cols, rows);
    for (unsigned i = 0; i < rows; ++i)
      for (unsigned j = 0; j < cols; ++j) r.at(j, i) = at(i, j).star();
    return r;
  }

  QuatMat twist(unsigned n) const {
    QuatMat r = *this;
    for (auto& v : r.e) v = v.twist(n);
    return r;
  }

  // Entrywise right multiplication by Pi^n (the matrix B Pi^n).
  QuatMat mul_pi_right(unsigned n) const {
    QuatMat r = *this;
    for (unsigned t = 0; t < n; ++t)
      for (auto& v : r.e) v = v.mul_pi_right();
    return r;
  }

  FMat reduce_mod_pi() const {
    FMat r(&C->w.residue, rows, cols);
    for (unsigned i = 0; i < rows; ++i)
      for (unsigned j = 0; j < cols; ++j) r.at(i, j) = at(i, j).reduce_mod_pi();
    return r;
  }

  unsigned min_valuation() const {
    unsigned v = C->pi_prec;
    for (const auto& x : e) {
      unsigned xv = x.valuation();
      if (xv < v) v = xv;
    }
    return v;
  }
};

// Defect of T against the hermitian form h(u, v) = u* w v:
// defect(T) = (T*)^(1) w T - w. Zero iff T preserves the form (to precision).
inline QuatMat hermitian_defect(const QuatMat& T) {
  detail::check(T.rows == 2 && T.cols == 2, "hermitian_defect: need a 2x2 matrix");
  QuatMat w = QuatMat::wmat(T.C);
  return T.star().twist(1) * w * T - w;
}

}  // namespace ssmass
