#pragma once

// Classification of points xi in P^1(F_{p^(2m)}) by the degree of the
// non-trivial coordinate over F_{p^2}, together with the associated residue
// algebra B0' inside M_2(F_{p^2}) and the order of the line stabilizer in
// SL_2(F_{p^2}).
//
// Degree 1 (case I): xi is F_{p^2}-rational.
// Degree 2 (case II): the slope b satisfies b^2 = alpha b + beta.
// Degree >= 3 (case III): only scalars stabilize the line.

#include <array>
#include <numeric>
#include <vector>

#include "ssmass/finite_field.hpp"
#include "ssmass/matrix.hpp"
#include "ssmass/quaternion.hpp"

namespace ssmass {

enum class XiCase { I, II, III };

inline const char* xicase_name(XiCase t) {
  switch (t) {
    case XiCase::I: return "I";
    case XiCase::II: return "II";
    default: return "III";
  }
}

// Projective point, normalized to [1 : b] or [0 : 1].
struct XiPoint {
  FFElem a, b;
};

inline XiPoint make_xi(const FFElem& a, const FFElem& b) {
  detail::check(*a.K == *b.K, "make_xi: mixed contexts");
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("make_xi: (0, 0) is not projective");
  if (a.is_zero()) return {a, FFElem::one(b.K)};
  FFElem ai = a.inv();
  return {FFElem::one(a.K), ai * b};
}

struct XiClass {
  uint64_t p = 0;
  XiCase tag = XiCase::I;
  unsigned degree = 1;
  bool at_infinity = false;  // xi = [0 : 1] (case I only)
  // Finite rational slope: xi = [1 : c] with c in F_{p^2}, packed as (c0, c1).
  std::array<uint64_t, 2> slope{0, 0};
  bool has_minpoly = false;  // true in case II
  // b^2 = alpha b + beta with alpha, beta in F_{p^2}, packed as (c0, c1).
  std::array<uint64_t, 2> alpha{0, 0}, beta{0, 0};
};

inline XiClass classify(const XiPoint& xi) {
  const FieldCtx* K = xi.a.K;
  XiClass xc;
  xc.p = K->p;
  if (xi.a.is_zero()) {  // [0 : 1] is rational
    xc.tag = XiCase::I;
    xc.degree = 1;
    xc.at_infinity = true;
    return xc;
  }
  detail::check(xi.b.K == K, "classify: mixed contexts");
  auto [d, coeffs] = min_poly_over_fp2(xi.b);
  xc.degree = d;
  if (d == 1) {
    xc.tag = XiCase::I;
    Fp2 c = -coeffs[0];  // X + c0 = 0  =>  b = -c0
    xc.slope = {c.c0, c.c1};
    detail::check(xi.b == FFElem::embed_fp2(K, c), "classify: rational slope mismatch");
  } else if (d == 2) {
    xc.tag = XiCase::II;
    xc.has_minpoly = true;
    Fp2 alpha = -coeffs[1];  // X^2 + c1 X + c0 = 0  =>  b^2 = -c1 b - c0
    Fp2 beta = -coeffs[0];
    xc.alpha = {alpha.c0, alpha.c1};
    xc.beta = {beta.c0, beta.c1};
    FFElem al = FFElem::embed_fp2(K, alpha), be = FFElem::embed_fp2(K, beta);
    detail::check(xi.b * xi.b == al * xi.b + be, "classify: minimal polynomial mismatch");
  } else {
    xc.tag = XiCase::III;
  }
  return xc;
}

// Canonical representative of a class with a slope of exact degree d: the
// tower generator of F_{p^(2d)} for d >= 2, the rational point [1 : 0] for
// d = 1. Only the invariants (case, degree, alpha, beta) are meaningful.
inline XiClass xi_generic(uint64_t p, unsigned d) {
  if (d < 1) throw std::invalid_argument("xi_generic: degree must be >= 1");
  if (d == 1) {
    XiClass xc;
    xc.p = p;
    return xc;
  }
  if (d == 2) {
    FieldCtx K = make_field(p, 2);
    return classify(make_xi(FFElem::one(&K), FFElem::gen_y(&K)));
  }
  XiClass xc;
  xc.p = p;
  xc.tag = XiCase::III;
  xc.degree = d;
  return xc;
}

// The subalgebra B0' of M_2(F_{p^2}) stabilizing the line of xi in the
// (e1, e3)-plane: matrices m with m.(a, b) proportional to (a, b). Case I
// gives the Borel of the rational line (dim 3), case II the quadratic etale
// algebra generated by J = (0, 1; beta, alpha) (dim 2), case III only the
// scalars (dim 1).
struct EndoOrderDesc {
  uint64_t p = 0;
  XiCase tag = XiCase::I;
  unsigned dim = 0;
  bool at_infinity = false;
  std::array<uint64_t, 2> slope{0, 0};
  bool has_minpoly = false;
  std::array<uint64_t, 2> alpha{0, 0}, beta{0, 0};

  bool contains(const FMat& m) const {
    detail::check(m.k->p == p, "EndoOrderDesc: characteristic mismatch");
    detail::check(m.rows == 2 && m.cols == 2, "EndoOrderDesc: need a 2x2 matrix");
    const Fp2Ctx* k = m.k;
    switch (tag) {
      case XiCase::I: {
        if (at_infinity) return m.at(0, 1).is_zero();
        Fp2 c(k, slope[0], slope[1]);
        return m.at(1, 0) + m.at(1, 1) * c == (m.at(0, 0) + m.at(0, 1) * c) * c;
      }
      case XiCase::II: {
        Fp2 al(k, alpha[0], alpha[1]), be(k, beta[0], beta[1]);
        return m.at(1, 0) == be * m.at(0, 1) && m.at(1, 1) - m.at(0, 0) == al * m.at(0, 1);
      }
      default:
        return m.at(0, 1).is_zero() && m.at(1, 0).is_zero() && m.at(0, 0) == m.at(1, 1);
    }
  }

  std::vector<FMat> basis(const Fp2Ctx* k) const {
    detail::check(k->p == p, "EndoOrderDesc: characteristic mismatch");
    std::vector<FMat> out;
    out.push_back(FMat::identity(k, 2));
    if (tag == XiCase::I) {
      if (at_infinity) {
        FMat e00(k, 2, 2), e10(k, 2, 2);
        e00.at(0, 0) = Fp2::one(k);
        e10.at(1, 0) = Fp2::one(k);
        out.push_back(std::move(e00));
        out.push_back(std::move(e10));
      } else {
        Fp2 c(k, slope[0], slope[1]);
        FMat b1(k, 2, 2), b2(k, 2, 2);
        b1.at(0, 0) = Fp2::one(k);
        b1.at(1, 0) = c;
        b2.at(0, 1) = Fp2::one(k);
        b2.at(1, 0) = c * c;
        out.push_back(std::move(b1));
        out.push_back(std::move(b2));
      }
    } else if (tag == XiCase::II) {
      FMat jm(k, 2, 2);
      jm.at(0, 1) = Fp2::one(k);
      jm.at(1, 0) = Fp2(k, beta[0], beta[1]);
      jm.at(1, 1) = Fp2(k, alpha[0], alpha[1]);
      out.push_back(std::move(jm));
    }
    for (const auto& m : out) detail::check(contains(m), "EndoOrderDesc: basis escapes B0'");
    return out;
  }
};

inline EndoOrderDesc residue_algebra(const XiClass& xc) {
  EndoOrderDesc d;
  d.p = xc.p;
  d.tag = xc.tag;
  d.at_infinity = xc.at_infinity;
  d.slope = xc.slope;
  d.has_minpoly = xc.has_minpoly;
  d.alpha = xc.alpha;
  d.beta = xc.beta;
  switch (xc.tag) {
    case XiCase::I: d.dim = 3; break;
    case XiCase::II: d.dim = 2; break;
    default: d.dim = 1; break;
  }
  return d;
}

// Whether T mod Pi lies in the residue algebra (membership depends on T
// only through its reduction).
inline bool endo_membership(const QuatMat& T, const EndoOrderDesc& d) {
  detail::check(T.C->p == d.p, "endo_membership: characteristic mismatch");
  return d.contains(T.reduce_mod_pi());
}

// Order of the stabilizer of the line k.(1, b) (resp. (0, 1)) in
// SL_2(F_{p^2}): p^2 (p^2 - 1) when b is rational, p^2 + 1 when quadratic,
// gcd(2, p^2 - 1) otherwise.
inline uint64_t sl2_line_stabilizer_order(const XiClass& xc) {
  uint64_t q = xc.p * xc.p;
  switch (xc.tag) {
    case XiCase::I: return q * (q - 1);
    case XiCase::II: return q + 1;
    default: return std::gcd<uint64_t>(2, q - 1);
  }
}

}  // namespace ssmass
